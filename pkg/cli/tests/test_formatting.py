import json

from django.test import SimpleTestCase

from cli.formatting import Table, cell, parse_index_list, render


class RenderTests(SimpleTestCase):
    def setUp(self):
        self.table = Table(columns=("face", "ML degree", "runtime_ms"), title="Faces", summary="mldeg=4")
        self.table.add((0, 1, 2), 2, 1.5)
        self.table.add((2, 5), None, 0.25)

    def test_markdown(self):
        text = render(self.table, "md")
        self.assertEqual(
            text.splitlines(),
            [
                "## Faces",
                "",
                "mldeg=4",
                "",
                "| face | ML degree | runtime_ms |",
                "|---|---|---|",
                "| {0,1,2} | 2 | 1.5 |",
                "| {2,5} |  | 0.25 |",
            ],
        )

    def test_no_timing_drops_runtime_column(self):
        text = render(self.table, "csv", timing=False)
        self.assertEqual(text, 'face,ML degree\n"{0,1,2}",2\n"{2,5}",')

    def test_json(self):
        payload = json.loads(render(self.table, "json"))
        self.assertEqual(payload["columns"], ["face", "ML degree", "runtime_ms"])
        self.assertEqual(payload["rows"][0], {"face": "{0,1,2}", "ML degree": "2", "runtime_ms": "1.5"})
        self.assertEqual(payload["summary"], "mldeg=4")

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            render(self.table, "xml")

    def test_row_width_is_checked(self):
        with self.assertRaises(ValueError):
            self.table.add(1, 2)


class HelperTests(SimpleTestCase):
    def test_cells(self):
        self.assertEqual(cell(True), "yes")
        self.assertEqual(cell(None), "")
        self.assertEqual(cell([3]), "{3}")

    def test_index_lists(self):
        self.assertEqual(parse_index_list("0, 2,1"), [0, 2, 1])
        self.assertIsNone(parse_index_list(""))
        self.assertIsNone(parse_index_list(None))
        with self.assertRaises(ValueError):
            parse_index_list("0,x")
