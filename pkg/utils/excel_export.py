"""Excel workbook export of locality checks and scan tables using XlsxWriter."""

from datetime import datetime
from io import BytesIO
from typing import Any

import pandas as pd
import xlsxwriter

from locality.correlation import LOCALITY_BOUND
from models.result import CheckResult, CheckStatus


class ExcelReportGenerator:
    """Generate Excel workbooks for BellSpace runs."""

    def __init__(self, title: str, scenario_name: str = "") -> None:
        """Initialize the report generator.

        Args:
            title: Title written on the overview sheet
            scenario_name: Scenario file or built-in scenario the run used
        """
        self.title = title or "BellSpace Report"
        self.scenario_name = scenario_name or "built-in"
        self.run_date = datetime.now().strftime("%Y-%m-%d %H:%M")

    def _create_formats(self, workbook: xlsxwriter.Workbook) -> dict[str, Any]:
        """Create all formatting styles for the workbook."""
        formats = {}

        formats["title"] = workbook.add_format({
            "bold": True,
            "font_size": 16,
            "font_color": "#1e3a5f",
            "align": "center",
            "valign": "vcenter",
        })

        formats["header"] = workbook.add_format({
            "bold": True,
            "font_size": 11,
            "font_color": "white",
            "bg_color": "#1e3a5f",
            "align": "center",
            "valign": "vcenter",
            "border": 1,
            "text_wrap": True,
        })

        formats["field_label"] = workbook.add_format({
            "bold": True,
            "font_size": 10,
            "bg_color": "#d9e2f3",
            "align": "left",
            "valign": "vcenter",
            "border": 1,
        })

        formats["field_value"] = workbook.add_format({
            "font_size": 10,
            "align": "left",
            "valign": "vcenter",
            "border": 1,
        })

        # Scientific values keep the twelve digits of the CSV output
        formats["number"] = workbook.add_format({
            "font_size": 10,
            "align": "center",
            "valign": "vcenter",
            "border": 1,
            "num_format": "0.000000000000",
        })

        formats["status_pass"] = workbook.add_format({
            "bold": True,
            "font_size": 10,
            "font_color": "white",
            "bg_color": "#10b981",
            "align": "center",
            "valign": "vcenter",
            "border": 1,
        })

        formats["status_warning"] = workbook.add_format({
            "bold": True,
            "font_size": 10,
            "font_color": "white",
            "bg_color": "#f59e0b",
            "align": "center",
            "valign": "vcenter",
            "border": 1,
        })

        formats["status_fail"] = workbook.add_format({
            "bold": True,
            "font_size": 10,
            "font_color": "white",
            "bg_color": "#ef4444",
            "align": "center",
            "valign": "vcenter",
            "border": 1,
        })

        return formats

    def _get_status_format(self, status: CheckStatus, formats: dict[str, Any]) -> Any:
        """Get the appropriate format for a check status."""
        if status == CheckStatus.PASS:
            return formats["status_pass"]
        if status == CheckStatus.WARNING:
            return formats["status_warning"]
        return formats["status_fail"]

    def _write_overview(
        self,
        workbook: xlsxwriter.Workbook,
        formats: dict[str, Any],
        checks: list[CheckResult],
        overall_status: CheckStatus,
    ) -> None:
        """Write the Overview sheet with one row per check."""
        sheet = workbook.add_worksheet("Overview")
        sheet.set_column("A:A", 28)
        sheet.set_column("B:B", 12)
        sheet.set_column("C:C", 60)

        sheet.merge_range("A1:C1", self.title.upper(), formats["title"])
        sheet.set_row(0, 30)

        overview = [
            ("Scenario", self.scenario_name),
            ("Run Date", self.run_date),
            ("Overall Status", overall_status.value.upper()),
        ]
        for row_idx, (field, value) in enumerate(overview, start=2):
            sheet.write(row_idx, 0, field, formats["field_label"])
            if field == "Overall Status":
                sheet.write(row_idx, 1, value, self._get_status_format(overall_status, formats))
            else:
                sheet.write(row_idx, 1, value, formats["field_value"])

        row = len(overview) + 4
        for col_idx, header in enumerate(["Check", "Result", "Summary"]):
            sheet.write(row, col_idx, header, formats["header"])
        row += 1

        for result in checks:
            sheet.write(row, 0, result.name, formats["field_label"])
            sheet.write(row, 1, result.status.value.upper(), self._get_status_format(result.status, formats))
            sheet.write(row, 2, result.summary, formats["field_value"])
            row += 1

    def _write_scan_sheet(
        self,
        workbook: xlsxwriter.Workbook,
        formats: dict[str, Any],
        scan: pd.DataFrame,
        crossing: tuple[float, float] | None,
    ) -> None:
        """Write the Scan sheet: one row per grid point, local flag colored."""
        sheet = workbook.add_worksheet("Scan")
        sheet.set_column(0, len(scan.columns) - 1, 20)

        for col_idx, col_name in enumerate(scan.columns):
            sheet.write(0, col_idx, col_name, formats["header"])

        for row_idx, row in enumerate(scan.itertuples(index=False), start=1):
            sheet.write_number(row_idx, 0, row.param, formats["number"])
            sheet.write_number(row_idx, 1, row.g, formats["number"])
            sheet.write_number(row_idx, 2, row.chsh_max, formats["number"])
            local_format = formats["status_pass"] if row.local else formats["status_fail"]
            sheet.write(row_idx, 3, "LOCAL" if row.local else "VIOLATION POSSIBLE", local_format)

        note_row = len(scan) + 2
        sheet.write(note_row, 0, "Threshold 1/√2", formats["field_label"])
        sheet.write_number(note_row, 1, LOCALITY_BOUND, formats["number"])
        sheet.write(note_row + 1, 0, "Crossing bracket", formats["field_label"])
        if crossing is None:
            sheet.write(note_row + 1, 1, "none in range", formats["field_value"])
        else:
            sheet.write_number(note_row + 1, 1, crossing[0], formats["number"])
            sheet.write_number(note_row + 1, 2, crossing[1], formats["number"])

    def generate_report(
        self,
        checks: list[CheckResult] | None = None,
        overall_status: CheckStatus | None = None,
        scan: pd.DataFrame | None = None,
        crossing: tuple[float, float] | None = None,
    ) -> BytesIO:
        """Generate the Excel workbook.

        Args:
            checks: Check results for the Overview sheet
            overall_status: Combined status of the checks
            scan: Scan table with columns param, g, chsh_max, local
            crossing: Grid bracket where g crosses 1/√2, if any

        Returns:
            BytesIO buffer containing the Excel file
        """
        output = BytesIO()
        workbook = xlsxwriter.Workbook(output, {"in_memory": True})
        formats = self._create_formats(workbook)

        if checks is not None:
            self._write_overview(workbook, formats, checks, overall_status or CheckStatus.PASS)
        if scan is not None:
            self._write_scan_sheet(workbook, formats, scan, crossing)

        workbook.close()
        output.seek(0)
        return output
