"""
Command Response Data Class
Structured record of one command run: what was asked, how long it took,
what came out and what went wrong.
"""
from dataclasses import dataclass, field
from typing import Dict, Any, Optional
from datetime import datetime, timezone

# exit codes
OK = 0
FAILED = 1
DOMAIN_ERROR = 2
NOT_CONVERGED = 3


@dataclass
class CommandResponse:
    """
    Represents the outcome of a table or eval command.

    Attributes:
        command: Name of the command ('table1', 'table2', 'eval')
        subject: What was computed (e.g. 'I', 'J' for eval; the table name otherwise)
        arguments: Dictionary of arguments passed to the command
        return_code: 0 success, 2 domain error, 3 convergence failure, 1 anything else
        rendered: Formatted output (markdown or CSV)
        error: Accumulated error messages
        values: Computed values keyed by method tag or column
    """
    command: str
    subject: str
    process_start_time: datetime = field(default_factory=lambda: datetime.now(timezone.utc))
    process_time_ms: int = 0
    process_end_time: Optional[datetime] = None
    arguments: Dict[str, Any] = field(default_factory=dict)
    return_code: int = OK
    rendered: str = ""
    error: str = ""
    values: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the CommandResponse to a JSON-serialisable dictionary.

        Returns:
            Dictionary representation of the response
        """
        return {
            "command": self.command,
            "subject": self.subject,
            "process_start_time": self.process_start_time.isoformat() if self.process_start_time else None,
            "process_end_time": self.process_end_time.isoformat() if self.process_end_time else None,
            "process_time_ms": self.process_time_ms,
            "arguments": self.arguments,
            "return_code": self.return_code,
            "rendered": self.rendered,
            "error": self.error,
            "values": self.values,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CommandResponse':
        """
        Create a CommandResponse from a dictionary produced by to_dict.

        Args:
            data: Dictionary containing response data

        Returns:
            CommandResponse instance
        """
        start = data.get("process_start_time")
        end = data.get("process_end_time")
        return cls(
            command=data.get("command", ""),
            subject=data.get("subject", ""),
            process_start_time=datetime.fromisoformat(start) if isinstance(start, str) else (start or datetime.now(timezone.utc)),
            process_time_ms=data.get("process_time_ms", 0),
            process_end_time=datetime.fromisoformat(end) if isinstance(end, str) else end,
            arguments=data.get("arguments", {}),
            return_code=data.get("return_code", OK),
            rendered=data.get("rendered", ""),
            error=data.get("error", ""),
            values=data.get("values", {}),
        )

    def is_successful(self) -> bool:
        """True if return_code is 0."""
        return self.return_code == OK

    def has_errors(self) -> bool:
        """True if error text was recorded or return_code is non-zero."""
        return bool(self.error) or self.return_code != OK

    def end_process_timer(self):
        """
        Set the process end time to current time and calculate process_time_ms.
        """
        self.process_end_time = datetime.now(timezone.utc)
        self.process_time_ms = int((self.process_end_time - self.process_start_time).total_seconds() * 1000)

    def add_error(self, error_message: str, return_code: Optional[int] = None):
        """
        Append an error message to the error field.

        A later convergence failure does not hide an earlier domain error:
        the first non-zero return code is kept.

        Args:
            error_message: The error message to append
            return_code: Optional return code to set
        """
        if return_code is not None and self.return_code == OK:
            self.return_code = return_code
        if self.error:
            self.error += "\n"
        self.error += error_message

        self.end_process_timer()

    def __repr__(self) -> str:
        string = (f"command: '{self.command}', "
                  f"subject: '{self.subject}', "
                  f"process_time_ms: {self.process_time_ms}, "
                  f"process_start_time: {self.process_start_time}, "
                  f"process_end_time: {self.process_end_time}, "
                  f"return_code: {self.return_code}")

        if self.rendered:
            string += f" \r\n --- Output: \r\n{self.rendered}"

        if self.error:
            string += f" \r\n --- An error occured: \r\n {self.error}"

        return string
