import pandas as pd
import logging
from typing import List

from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill
from openpyxl.utils.dataframe import dataframe_to_rows

from .census import VIOLATION, CensusResult

logger = logging.getLogger(__name__)


class CensusExcelWriter:
    """Writes census results to Excel (Summary + Findings sheets) and CSV"""

    columns = ["Index", "Structure Matrix", "Kind", "Check", "Detail"]

    def write_excel(self, result: CensusResult, output_path: str) -> str:
        """
        Write a census result to a formatted workbook.
        Returns the path to the created file.
        """
        try:
            wb = Workbook()
            ws = wb.active
            ws.title = "Summary"
            for row in self._summary_rows(result):
                ws.append(row)
            self._format_sheet(ws)

            df = self._create_dataframe(result)
            ws_findings = wb.create_sheet("Findings")
            for r in dataframe_to_rows(df, index=False, header=True):
                ws_findings.append(r)
            self._format_sheet(ws_findings)
            self._highlight_violations(ws_findings, df)

            wb.save(output_path)
            logger.info(f"Excel file saved to {output_path}")
            return output_path

        except Exception as e:
            logger.error(f"Error writing Excel file: {e}")
            raise

    def write_csv(self, result: CensusResult, output_path: str) -> str:
        try:
            self._create_dataframe(result).to_csv(output_path, index=False)
            logger.info(f"CSV file saved to {output_path}")
            return output_path

        except Exception as e:
            logger.error(f"Error writing CSV file: {e}")
            raise

    def _summary_rows(self, result: CensusResult) -> List[list]:
        return [
            ["Field", "Dimension", "Probe", "Scanned", "Violations", "Witnesses"],
            [result.field.name, result.n, result.probe, result.scanned,
             len(result.violations), len(result.witnesses)],
        ]

    def _create_dataframe(self, result: CensusResult) -> pd.DataFrame:
        if not result.findings:
            return pd.DataFrame(columns=self.columns)
        records = [
            {
                "Index": f.index,
                "Structure Matrix": "; ".join(" ".join(row) for row in f.matrix),
                "Kind": f.kind,
                "Check": f.check,
                "Detail": f.detail,
            }
            for f in result.findings
        ]
        return pd.DataFrame(records)[self.columns]

    def _format_sheet(self, ws):
        ws.freeze_panes = "A2"

        for column in ws.columns:
            column_letter = column[0].column_letter
            max_length = max((len(str(cell.value)) for cell in column if cell.value is not None), default=0)
            ws.column_dimensions[column_letter].width = min(max_length + 2, 50)

        header_font = Font(bold=True)
        for cell in ws[1]:
            cell.font = header_font

    def _highlight_violations(self, ws, df: pd.DataFrame):
        red_fill = PatternFill(start_color="FFB6C1", end_color="FFB6C1", fill_type="solid")
        kind_col = self.columns.index("Kind") + 1
        for row in range(2, len(df) + 2):
            if ws.cell(row=row, column=kind_col).value == VIOLATION:
                for col in range(1, len(self.columns) + 1):
                    ws.cell(row=row, column=col).fill = red_fill
