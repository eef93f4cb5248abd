import csv
import json
from io import StringIO
from unittest import skipUnless

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from runs.models import ComputationRow, ComputationRun


def run_mldeg(*args) -> str:
    out = StringIO()
    call_command("mldeg", *args, stdout=out, verbosity=0)
    return out.getvalue()


class ComputeCommandTests(SimpleTestCase):
    def test_square_example(self):
        output = run_mldeg("compute", "--spec", "square_example", "--no-timing")
        self.assertIn("mldeg=1 degree=8", output)
        self.assertNotIn("runtime_ms", output)

    def test_single_column(self):
        self.assertIn("mldeg=1 degree=1", run_mldeg("compute", "--spec", "single_column"))

    def test_birch_on_unit_segment(self):
        output = run_mldeg("compute", "--spec", "unit_segment", "--birch", "--format", "json", "--no-timing")
        payload = json.loads(output)
        self.assertEqual(payload["summary"], "mldeg=1 degree=1 birch=holds")
        self.assertEqual(payload["rows"][0]["mle"], "1/2, 1/2")
        self.assertEqual(payload["rows"][0]["seed"], "0")

    def test_output_is_deterministic(self):
        args = ("compute", "--spec", "square_minus_last", "--seed", "11", "--no-timing", "--format", "csv")
        first = run_mldeg(*args)
        self.assertEqual(first, run_mldeg(*args))
        self.assertIn(",3,", first)

    def test_missing_spec_exits_with_one(self):
        with self.assertRaises(CommandError) as cm:
            run_mldeg("compute", "--spec", "no_such_model")
        self.assertEqual(cm.exception.returncode, 1)


class ReportCommandTests(SimpleTestCase):
    def test_facets_of_square_example(self):
        payload = json.loads(run_mldeg("facets", "--spec", "square_example", "--format", "json"))
        self.assertEqual(payload["summary"], "mldeg=1 faces=5 violations=0")
        self.assertEqual([row["ML degree"] for row in payload["rows"]], ["1", "1", "1", "1", "1"])
        self.assertEqual([row["degree"] for row in payload["rows"]], ["8", "2", "2", "2", "2"])

    def test_flag_needs_a_flag_in_the_spec(self):
        with self.assertRaises(CommandError) as cm:
            run_mldeg("flag", "--spec", "square_example")
        self.assertEqual(cm.exception.returncode, 1)

    @skipUnless(settings.MLDEG_SLOW_TESTS, "slow: nine-row flag of the binary four-cycle")
    def test_binary_four_cycle_flag(self):
        payload = json.loads(run_mldeg("flag", "--spec", "binary_four_cycle", "--format", "json", "--modular-gb"))
        self.assertEqual(
            [row["ML degree"] for row in payload["rows"]],
            ["13", "5", "3", "2", "2", "1", "1", "1", "1"],
        )


class ZerosCommandTests(SimpleTestCase):
    def test_segment_patterns(self):
        output = run_mldeg("zeros", "--spec", "unit_segment", "--pattern", "u,u", "--pattern", "0,u", "--format", "csv", "--no-timing")
        rows = list(csv.reader(StringIO(output.strip())))
        self.assertEqual(rows, [["pattern", "c"], ["u,u", "1"], ["0,u", "0"]])
        self.assertIn('"u,u",1', output)

    def test_pattern_length_is_checked(self):
        with self.assertRaises(CommandError) as cm:
            run_mldeg("zeros", "--spec", "unit_segment", "--pattern", "u,u,u")
        self.assertEqual(cm.exception.returncode, 1)

    @skipUnless(settings.MLDEG_SLOW_TESTS, "slow: six scalings of the 3x3 independence model")
    def test_independence_row(self):
        output = run_mldeg(
            "zeros", "--spec", "independence_3x3", "--pattern", "0,0,0,u,u,u,u,0,0", "--format", "csv", "--no-timing"
        )
        header, row = list(csv.reader(StringIO(output.strip())))
        self.assertEqual(row, ["0,0,0,u,u,u,u,0,0", "1", "2", "3", "4", "5", "6"])
        self.assertEqual(len(header), 7)


class ModelAndTropicalCommandTests(SimpleTestCase):
    def test_validate(self):
        payload = json.loads(run_mldeg("model", "validate", "--spec", "segre_tropical", "--format", "json"))
        self.assertEqual(payload["summary"], "valid")
        values = {row["property"]: row["value"] for row in payload["rows"]}
        self.assertEqual(values["columns"], "4")
        self.assertEqual(values["degree"], "2")
        self.assertEqual(values["tropical data"], "yes")

    def test_eliminate(self):
        output = run_mldeg("tropical", "eliminate", "--spec", "segre_tropical")
        self.assertIn("degree=2 solutions=2", output)
        self.assertIn("theta0=1/3, theta1=2", output)

    def test_eliminate_needs_tropical_section(self):
        with self.assertRaises(CommandError) as cm:
            run_mldeg("tropical", "eliminate", "--spec", "unit_segment")
        self.assertEqual(cm.exception.returncode, 1)

    def test_subdivide_segment(self):
        output = run_mldeg("tropical", "subdivide", "--spec", "unit_segment", "--face", "0", "--weights-seed", "3")
        self.assertIn("triangulation=yes", output)


class LedgerCommandTests(TestCase):
    def test_record_and_history(self):
        run_mldeg("compute", "--spec", "single_column", "--record", "--seed", "4")
        run = ComputationRun.objects.get()
        self.assertEqual(run.command, "compute")
        self.assertEqual(run.seed, 4)
        self.assertEqual(run.status, ComputationRun.Status.COMPLETED)
        self.assertEqual(ComputationRow.objects.get().payload["mldeg"], "1")

        output = run_mldeg("history", "--format", "csv")
        self.assertIn(f"{run.pk},compute,single_column,4,completed,1,", output)

    def test_failed_run_is_recorded(self):
        with self.assertRaises(CommandError):
            run_mldeg("flag", "--spec", "square_example", "--record")
        self.assertEqual(ComputationRun.objects.get().status, ComputationRun.Status.FAILED)
