from typing import Dict, List, Tuple
import threading

class VerificationLog:
    def __init__(self, max_messages: int = 1000):
        self._messages: List[Tuple[str, str]] = []
        self._max_messages = max_messages
        self._lock = threading.Lock()

        # Marker used for each message type in the text rendering
        self._formats = {
            "PASS": "[pass]",
            "FAIL": "[FAIL]",
            "INFO": "[info]",
            "SKIP": "[skip]",
        }

    def add_message(self, message: str, message_type: str = "INFO") -> None:
        """Add a new message. No timestamps, so logs compare equal across runs."""
        if message_type not in self._formats:
            raise ValueError(f"unknown message type {message_type}")
        with self._lock:
            self._messages.append((message_type, message))
            if len(self._messages) > self._max_messages:
                self._messages.pop(0)

    def add_pass(self, message: str) -> None:
        self.add_message(message, "PASS")

    def add_fail(self, message: str) -> None:
        self.add_message(message, "FAIL")

    def add_skip(self, message: str) -> None:
        self.add_message(message, "SKIP")

    def check(self, condition: bool, message: str) -> bool:
        """Record message as PASS or FAIL according to condition and return it."""
        self.add_message(message, "PASS" if condition else "FAIL")
        return condition

    @property
    def passed(self) -> bool:
        with self._lock:
            return all(kind != "FAIL" for kind, _ in self._messages)

    def count(self, message_type: str) -> int:
        with self._lock:
            return sum(1 for kind, _ in self._messages if kind == message_type)

    def get_messages(self) -> str:
        """All messages as text, with a blank line between runs of different types."""
        with self._lock:
            formatted = []
            last_type = None
            for kind, msg in self._messages:
                if last_type and kind != last_type:
                    formatted.append("")
                formatted.append(f"{self._formats[kind]} {msg}")
                last_type = kind
            return "\n".join(formatted)

    def to_record(self) -> List[Dict[str, str]]:
        with self._lock:
            return [{"type": kind, "message": msg} for kind, msg in self._messages]

    def clear(self) -> None:
        with self._lock:
            self._messages.clear()
