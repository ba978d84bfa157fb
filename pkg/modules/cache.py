"""
On-disk cache of enumerated class sets, one JSON file per (a, b, N1, N2).

Records are re-validated on load; anything stale or inconsistent is ignored
and recomputed by the caller.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional

from modules.class_set import ClassSet, mass_formula
from modules.errors import CacheError, QmfError
from modules.ideals import is_equivalent, unit_weight
from modules.lattice import QuatLattice
from modules.metadata_utils import dump_json, fraction_to_str
from modules.orders import IdealLattice, Order
from modules.version import CACHE_FORMAT_VERSION

logger = logging.getLogger(__name__)


def cache_file_name(a: int, b: int, n1: int, n2: int) -> str:
    return f"classes_a{a}_b{b}_N1_{n1}_N2_{n2}.json"


def _basis_from_record(rows):
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


class ClassSetCache:
    def __init__(self, cache_dir):
        if cache_dir is None:
            from modules.settings import Settings

            cache_dir = Settings().get("cache_dir")
        self.cache_dir = Path(cache_dir)

    def path_for(self, order: Order, n1: int, n2: int) -> Path:
        algebra = order.algebra
        return self.cache_dir / cache_file_name(algebra.a, algebra.b, n1, n2)

    def store(self, class_set: ClassSet) -> Path:
        algebra = class_set.algebra
        record = {
            "format_version": CACHE_FORMAT_VERSION,
            "key": {"a": algebra.a, "b": algebra.b, "N1": class_set.n1, "N2": class_set.n2},
            "order": class_set.order.to_record(),
            "ideals": [ideal.to_record() for ideal in class_set.ideals],
            "weights": list(class_set.weights),
            "mass": fraction_to_str(class_set.mass),
        }
        path = self.path_for(class_set.order, class_set.n1, class_set.n2)
        dump_json(record, str(path))
        logger.info("cached class set at %s", path)
        return path

    def load(self, order: Order, n1: int, n2: int) -> Optional[ClassSet]:
        """The cached class set for this order and level, or None when absent or invalid."""
        path = self.path_for(order, n1, n2)
        if not path.exists():
            logger.debug("cache miss: %s", path)
            return None
        try:
            with open(path) as f:
                record = json.load(f)
            class_set = self._decode(record, order, n1, n2)
        except (QmfError, ValueError, KeyError, TypeError) as e:
            logger.warning("ignoring cache record %s: %s", path, e)
            return None
        logger.info("cache hit: %s", path)
        return class_set

    def _decode(self, record, order: Order, n1: int, n2: int) -> ClassSet:
        algebra = order.algebra
        if record.get("format_version") != CACHE_FORMAT_VERSION:
            raise CacheError(f"format version {record.get('format_version')} is not {CACHE_FORMAT_VERSION}")
        expected_key = {"a": str(algebra.a), "b": str(algebra.b), "N1": str(n1), "N2": str(n2)}
        if record["key"] != expected_key:
            raise CacheError(f"key {record['key']} does not match {expected_key}")
        if _basis_from_record(record["order"]) != order.basis:
            raise CacheError("order basis differs from the freshly built order")
        weights = tuple(int(w) for w in record["weights"])
        mass = Fraction(record["mass"])
        if mass != mass_formula(n1, n2) or sum(Fraction(1, w) for w in weights) != mass:
            raise CacheError("weights do not reproduce the mass")
        if not order.closed_under_multiplication():
            raise CacheError("cached order is not closed under multiplication")
        ideals = []
        for rows in record["ideals"]:
            lattice = QuatLattice.from_generators(algebra, _basis_from_record(rows))
            ideal = IdealLattice.of(lattice, order)
            if not ideal.is_right_ideal():
                raise CacheError("cached ideal is not a right ideal of the order")
            ideals.append(ideal)
        if len(ideals) != len(weights):
            raise CacheError("ideal and weight counts differ")
        recomputed = tuple(unit_weight(ideal) for ideal in ideals)
        if recomputed != weights:
            raise CacheError(f"stored weights {weights} differ from the unit weights {recomputed}")
        for i in range(len(ideals)):
            for j in range(i):
                if is_equivalent(ideals[i], ideals[j]) is not None:
                    raise CacheError(f"cached representatives {j} and {i} are equivalent")
        return ClassSet(order, tuple(ideals), weights, mass, n1, n2)
