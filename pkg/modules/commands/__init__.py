"""
Command module for quatforms.
This module provides one command class per CLI subcommand.
"""

from .base_command import BaseCommand, RunConfig
from .brandt_command import BrandtCommand
from .classes_command import ClassesCommand
from .congruence_command import CongruenceCommand
from .lvalue_command import LValueCommand
from .mass_command import MassCommand
from .scan_command import ScanCommand
from .verify_examples_command import VerifyExamplesCommand

COMMANDS = {
    "mass": MassCommand,
    "classes": ClassesCommand,
    "brandt": BrandtCommand,
    "congruence": CongruenceCommand,
    "lvalue": LValueCommand,
    "scan": ScanCommand,
    "verify-examples": VerifyExamplesCommand,
}


def create_command(name, settings):
    """
    Create a command instance for the specified subcommand.

    Args:
        name: Subcommand name
        settings: Settings instance supplying defaults

    Returns:
        A command instance
    """
    try:
        return COMMANDS[name](settings)
    except KeyError:
        raise ValueError(f"Unknown command: {name}")


__all__ = [
    'BaseCommand',
    'RunConfig',
    'MassCommand',
    'ClassesCommand',
    'BrandtCommand',
    'CongruenceCommand',
    'LValueCommand',
    'ScanCommand',
    'VerifyExamplesCommand',
    'COMMANDS',
    'create_command',
]
