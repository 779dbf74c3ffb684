"""Local SQLite archive of report bodies, kept as regression ground truth."""

import json
import logging
import os
import sqlite3
import threading
import time

from sortlab.reports import EnumerationReport, ReportSchema

SQLITE_BUSY_TIMEOUT_MS = 30000

logger = logging.getLogger(__name__)


class ReportArchive:
    """Thread-safe SQLite store of verification and enumeration reports."""

    def __init__(self, db_path: str):
        self._db_path = db_path
        directory = os.path.dirname(db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self._local = threading.local()
        self._init_schema()

    def _get_conn(self) -> sqlite3.Connection:
        if not hasattr(self._local, 'conn') or self._local.conn is None:
            self._local.conn = sqlite3.connect(
                self._db_path,
                timeout=SQLITE_BUSY_TIMEOUT_MS / 1000,
            )
            self._local.conn.row_factory = sqlite3.Row
            self._local.conn.execute(
                f"PRAGMA busy_timeout = {SQLITE_BUSY_TIMEOUT_MS}")
            self._local.conn.execute("PRAGMA journal_mode = WAL")
        return self._local.conn

    def _init_schema(self):
        conn = self._get_conn()
        conn.execute("""
            CREATE TABLE IF NOT EXISTS reports (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                target       TEXT NOT NULL,
                patterns     TEXT NOT NULL,
                n_min        INTEGER NOT NULL,
                n_max        INTEGER NOT NULL,
                digest       TEXT NOT NULL,
                body         TEXT NOT NULL,
                archived_at  INTEGER NOT NULL
            )
        """)
        conn.execute("""
            CREATE TABLE IF NOT EXISTS records (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                report_id      INTEGER NOT NULL REFERENCES reports(id),
                n              INTEGER NOT NULL,
                patterns       TEXT NOT NULL,
                quantity       TEXT NOT NULL,
                value          TEXT NOT NULL,
                verdict        TEXT NOT NULL,
                counterexample TEXT
            )
        """)
        conn.execute("""
            CREATE INDEX IF NOT EXISTS idx_reports_target
            ON reports(target, archived_at DESC)
        """)
        conn.commit()

    def store(self, report: EnumerationReport) -> int:
        ''' archives the report body and its records, returns the report id '''
        conn = self._get_conn()
        body = json.dumps(report.body(), sort_keys=True)
        # one transaction, a report row never lands without its records
        with conn:
            cursor = conn.execute(
                "INSERT INTO reports (target, patterns, n_min, n_max, digest, body, archived_at) "
                "VALUES (?, ?, ?, ?, ?, ?, ?)",
                (report.target, report.patterns, report.n_min, report.n_max,
                 report.digest(), body, int(time.time())))
            report_id = cursor.lastrowid
            conn.executemany(
                "INSERT INTO records (report_id, n, patterns, quantity, value, verdict, counterexample) "
                "VALUES (?, ?, ?, ?, ?, ?, ?)",
                [(report_id, r.n, r.patterns, r.quantity, r.value, r.verdict, r.counterexample)
                 for r in report.records])
        logger.info('archived %s report %d (%d records)', report.target, report_id, len(report.records))
        return report_id

    def latest(self, target: str) -> EnumerationReport | None:
        row = self._get_conn().execute(
            "SELECT body FROM reports WHERE target = ? ORDER BY id DESC LIMIT 1",
            (target,)).fetchone()
        if row is None:
            return None
        return ReportSchema().load(json.loads(row['body']))

    def digests(self, target: str) -> list[str]:
        rows = self._get_conn().execute(
            "SELECT digest FROM reports WHERE target = ? ORDER BY id",
            (target,)).fetchall()
        return [r['digest'] for r in rows]

    def records(self, report_id: int) -> list[sqlite3.Row]:
        return self._get_conn().execute(
            "SELECT n, patterns, quantity, value, verdict, counterexample "
            "FROM records WHERE report_id = ? ORDER BY id",
            (report_id,)).fetchall()

    def close(self):
        conn = getattr(self._local, 'conn', None)
        if conn is not None:
            conn.close()
            self._local.conn = None
