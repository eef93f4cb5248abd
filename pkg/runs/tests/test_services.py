from unittest import mock

from django.test import TestCase

from runs.models import ComputationRow, ComputationRun
from runs.services import LedgerRow, recent_runs, record_run


class RecordRunTests(TestCase):
    def test_completed_run_stores_rows_in_order(self):
        rows = [LedgerRow(key="(0, 1)", payload={"ml_degree": "2"}), LedgerRow(key="(1, 2)", error="ValueError: bad")]
        result = record_run("facets", "square.json", 7, lambda: rows)

        self.assertEqual(result.status, ComputationRun.Status.COMPLETED)
        run = ComputationRun.objects.get(pk=result.run.pk)
        self.assertEqual(run.seed, 7)
        self.assertEqual(run.notes["row_count"], 2)
        self.assertIsNotNone(run.runtime_ms)
        stored = list(run.rows.all())
        self.assertEqual([row.key for row in stored], ["(0, 1)", "(1, 2)"])
        self.assertEqual(stored[0].payload, {"ml_degree": "2"})
        self.assertEqual(stored[1].error, "ValueError: bad")

    def test_runtime_comes_from_the_shared_timer(self):
        with mock.patch("runs.services.elapsed_ms", return_value=12.34) as timer:
            result = record_run("compute", "", 1, lambda: [])
        timer.assert_called_once()
        self.assertEqual(result.runtime_ms, 12.34)
        self.assertEqual(ComputationRun.objects.get().runtime_ms, 12.34)

    def test_failed_run_is_recorded_and_reraised(self):
        def explode():
            raise RuntimeError("solver gave up")

        with self.assertRaises(RuntimeError):
            record_run("compute", "cube.json", 0, explode)

        run = ComputationRun.objects.get()
        self.assertEqual(run.status, ComputationRun.Status.FAILED)
        self.assertEqual(run.notes["error"], "RuntimeError: solver gave up")
        self.assertEqual(ComputationRow.objects.count(), 0)

    def test_recent_runs_newest_first(self):
        for seed in range(3):
            record_run("compute", "", seed, lambda: [])
        self.assertEqual([run.seed for run in recent_runs(2)], [2, 1])
        with self.assertRaises(ValueError):
            recent_runs(0)
