"""Tests for ReportArchive, the local SQLite store of reports."""

import os
import sqlite3
import tempfile
import threading

import pytest

from sortlab.archive import ReportArchive
from sortlab.reports import FAIL, PASS, EnumerationReport, Record


@pytest.fixture
def archive():
    """Create a fresh archive in a temp directory for each test."""
    with tempfile.TemporaryDirectory() as tmpdir:
        store = ReportArchive(os.path.join(tmpdir, 'reports', 'archive.db'))
        yield store
        store.close()


def _report(value=5, verdict=PASS):
    counterexample = '3,1,2' if verdict == FAIL else ''
    return EnumerationReport(
        target='catalan',
        patterns='21',
        n_min=3,
        n_max=3,
        records=[Record(3, '21', '|Sort_1|', value, verdict=verdict, counterexample=counterexample)],
        options={'reading': 'periodic'}).stamp()


class TestSchema:

    def test_creates_tables(self, archive):
        rows = archive._get_conn().execute(
            "SELECT name FROM sqlite_master WHERE type='table'").fetchall()
        assert {r['name'] for r in rows} >= {'reports', 'records'}

    def test_idempotent_schema_init(self, archive):
        archive._init_schema()


class _FailingRecords:
    ''' connection stand-in whose records insert always fails '''

    def __init__(self, conn):
        self._conn = conn

    def __getattr__(self, name):
        return getattr(self._conn, name)

    def __enter__(self):
        return self._conn.__enter__()

    def __exit__(self, *exc):
        return self._conn.__exit__(*exc)

    def executemany(self, *args):
        raise sqlite3.OperationalError('disk I/O error')


class TestStore:

    def test_latest_round_trip(self, archive):
        report = _report()
        archive.store(report)
        latest = archive.latest('catalan')
        assert latest.records == report.records
        assert latest.digest() == report.digest()
        assert latest.timestamp is None

    def test_latest_missing(self, archive):
        assert archive.latest('zeilberger') is None

    def test_records_rows(self, archive):
        report_id = archive.store(_report(value=4, verdict=FAIL))
        rows = archive.records(report_id)
        assert len(rows) == 1
        assert rows[0]['verdict'] == FAIL
        assert rows[0]['counterexample'] == '3,1,2'

    def test_digests_in_order(self, archive):
        first = _report()
        second = _report(value=6)
        archive.store(first)
        archive.store(second)
        archive.store(first)
        assert archive.digests('catalan') == [first.digest(), second.digest(), first.digest()]

    def test_same_inputs_same_digest(self, archive):
        archive.store(_report())
        archive.store(_report())
        first, second = archive.digests('catalan')
        assert first == second

    def test_failed_records_insert_leaves_no_report(self, archive):
        real = archive._get_conn()
        archive._local.conn = _FailingRecords(real)
        with pytest.raises(sqlite3.OperationalError):
            archive.store(_report())
        archive._local.conn = real
        archive.store(_report(value=6))
        count = real.execute('SELECT COUNT(*) AS c FROM reports').fetchone()['c']
        assert count == 1
        assert archive.latest('catalan').records[0].value == '6'


class TestThreads:

    def test_one_connection_per_thread(self, archive):
        errors = []

        def work():
            try:
                archive.store(_report())
            except Exception as e:  # pragma: no cover
                errors.append(e)
            finally:
                archive.close()

        threads = [threading.Thread(target=work) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert errors == []
        assert len(archive.digests('catalan')) == 4
