"""Enumeration reports: per-n records with verdicts, serialized as CSV or JSON.

The report body (everything except the timestamp) is a pure function of the
inputs, so two runs of the same command hash alike whatever the worker count.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import pandas as pd
from marshmallow import Schema, fields, post_load, validate

from sortlab import SCHEMA_VERSION, VERSION

logger = logging.getLogger(__name__)

PASS = 'pass-up-to-n'
FAIL = 'fail'
SKIPPED = 'skipped'
INFO = 'info'
VERDICTS = (PASS, FAIL, SKIPPED, INFO)

COLUMNS = ['n', 'patterns', 'quantity', 'value', 'verdict', 'counterexample']


def _natural(text: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in re.split(r'(\d+)', text))


@dataclass(frozen=True)
class Record:
    n: int
    patterns: str
    quantity: str
    value: str
    verdict: str = INFO
    counterexample: str = ''

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f'unknown verdict {self.verdict!r}')
        if (self.verdict == FAIL) != bool(self.counterexample):
            raise ValueError(
                f'{self.quantity} at n={self.n}: a counterexample goes with '
                'a fail verdict and only with it')
        object.__setattr__(self, 'value', str(self.value))

    def sort_key(self) -> tuple:
        return (self.n, _natural(self.quantity), self.patterns)


@dataclass
class EnumerationReport:
    target: str
    patterns: str
    n_min: int
    n_max: int
    records: list[Record] = field(default_factory=list)
    options: dict[str, str] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION
    code_version: str = VERSION
    timestamp: str | None = None

    def __post_init__(self):
        self.records = sorted(self.records, key=Record.sort_key)

    def add(self, *records: Record) -> None:
        self.records = sorted([*self.records, *records], key=Record.sort_key)

    def stamp(self) -> 'EnumerationReport':
        self.timestamp = datetime.now(timezone.utc).isoformat(timespec='seconds')
        return self

    @property
    def failed(self) -> bool:
        return any(r.verdict == FAIL for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if r.verdict == FAIL]

    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def body(self) -> dict:
        data = ReportSchema().dump(self)
        data.pop('timestamp', None)
        return data

    def digest(self) -> str:
        canonical = json.dumps(self.body(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode()).hexdigest()

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(r) for r in self.records], columns=COLUMNS)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, lineterminator='\n')

    def to_json(self) -> str:
        return json.dumps(ReportSchema().dump(self), indent=2, sort_keys=True) + '\n'

    def render(self, fmt: str) -> str:
        if fmt == 'csv':
            return self.to_csv()
        if fmt == 'json':
            return self.to_json()
        raise ValueError(f'unknown report format {fmt!r}')

    def write(self, path: str, fmt: str) -> str:
        ''' single writer, called once after every shard has been merged '''
        with open(path, mode='w') as f:
            f.write(self.render(fmt))
        logger.info('wrote %s report with %d records to %s', fmt, len(self.records), path)
        return path

    @classmethod
    def from_json(cls, text: str) -> 'EnumerationReport':
        return ReportSchema().loads(text)


class RecordSchema(Schema):
    n = fields.Int(required=True)
    patterns = fields.Str(required=True)
    quantity = fields.Str(required=True)
    value = fields.Str(required=True)
    verdict = fields.Str(required=True, validate=validate.OneOf(VERDICTS))
    counterexample = fields.Str(load_default='')

    @post_load
    def make(self, data, **kwargs):
        return Record(**data)


class ReportSchema(Schema):
    schema_version = fields.Int(required=True)
    code_version = fields.Str(required=True)
    target = fields.Str(required=True)
    patterns = fields.Str(required=True)
    n_min = fields.Int(required=True)
    n_max = fields.Int(required=True)
    options = fields.Dict(keys=fields.Str(), values=fields.Str(), load_default=dict)
    timestamp = fields.Str(allow_none=True, load_default=None)
    records = fields.List(fields.Nested(RecordSchema), required=True)

    @post_load
    def make(self, data, **kwargs):
        return EnumerationReport(**data)
