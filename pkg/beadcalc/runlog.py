"""
Bead Calculus Engine - Run Log
Step-by-step audit trail for long computations
"""

import sys
from datetime import datetime
from typing import Dict, List


class RunLog:
    """Audit trail of computation steps, echoed as [STATUS] STEP: details"""

    def __init__(self, echo: bool = False, stream=None):
        self.echo = echo
        self.stream = stream
        self.entries: List[Dict[str, str]] = []

    def log_step(self, step: str, status: str, details: str = ""):
        """Log a computation step for the audit trail"""
        log_entry = {
            "timestamp": datetime.now().isoformat(),
            "step": step,
            "status": status,
            "details": details
        }
        self.entries.append(log_entry)
        if self.echo:
            print(f"[{status}] {step}: {details}", file=self.stream or sys.stderr)

    def errors(self) -> List[Dict[str, str]]:
        return [entry for entry in self.entries if entry["status"] == "ERROR"]

    def get_report(self) -> Dict:
        """Summarize the run"""
        return {
            "run_log": list(self.entries),
            "total_steps": len(self.entries),
            "success_count": len([log for log in self.entries if log["status"] == "SUCCESS"]),
            "error_count": len(self.errors()),
        }
