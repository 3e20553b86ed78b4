"""CSV tables and the JSON verification report."""

import csv
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from ris_secrecy.utils.json_utils import json_dumps_pretty, json_loads

SWEEP_COLUMNS = ('n', 'tx_snr_db', 'rs', 'phase', 'method', 'sop', 'uncertainty', 'status')


class SweepRow(BaseModel):
    """One method evaluated at one grid point; failed evaluations carry NaN values and the error code."""
    n: int
    tx_snr_db: float
    rs: float
    phase: str
    method: str
    sop: float = math.nan
    uncertainty: float = math.nan
    status: str = 'ok'

    @property
    def ok(self) -> bool:
        return self.status == 'ok'


class Gate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    value: float
    tolerance: float
    passed: bool = Field(alias='pass')


def gate_at_most(name: str, value: float, tolerance: float) -> Gate:
    return Gate(name=name, value=value, tolerance=tolerance, passed=bool(value <= tolerance))


def gate_at_least(name: str, value: float, tolerance: float) -> Gate:
    return Gate(name=name, value=value, tolerance=tolerance, passed=bool(value >= tolerance))


class Report(BaseModel):
    gates: List[Gate] = Field(default_factory=list)
    seed: int
    version: str
    command: Optional[str] = None
    config_sha256: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.gates)


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table(path: Union[str, Path], header: Sequence[str], rows: Sequence[Sequence]) -> Path:
    """UTF-8 CSV with a header row; floats keep their full repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def write_sweep_csv(path: Union[str, Path], rows: Sequence[SweepRow]) -> Path:
    return write_table(path, SWEEP_COLUMNS, [[getattr(r, c) for c in SWEEP_COLUMNS] for r in rows])


def read_sweep_csv(path: Union[str, Path]) -> List[SweepRow]:
    with Path(path).open(encoding='utf-8', newline='') as f:
        return [SweepRow.model_validate(record) for record in csv.DictReader(f)]


def write_report(path: Union[str, Path], report: Report) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json_dumps_pretty(report) + '\n', encoding='utf-8')
    return path


def read_report(path: Union[str, Path]) -> Report:
    return Report.model_validate(json_loads(Path(path).read_text(encoding='utf-8')))


def gates_by_name(report: Report) -> Dict[str, Gate]:
    return {g.name: g for g in report.gates}
