#!/usr/bin/env python3
"""
CSV export provider for census tables

Rows are indexed by n, columns by k; cells outside the triangle stay blank.
"""

import csv
import io
import logging

from libs.enumeration_lib import TABLE_FIRST_K, CensusResult

logger = logging.getLogger(__name__)


class Provider:
    """Census tables as CSV"""

    def render(self, result: CensusResult, table: str = "s1", **options) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")

        if table == "s":
            writer.writerow(["n", "s"])
            for n, total in enumerate(result.totals, 1):
                writer.writerow([n, total])
            return buffer.getvalue()

        first_k = TABLE_FIRST_K[table]
        rows = result.table(table)
        writer.writerow(["n"] + list(range(first_k, result.n + 1)))
        for row in rows:
            cells = row.values(first_k)
            writer.writerow([row.n] + cells + [""] * (result.n - row.n))
        logger.debug(f"Rendered table {table} with {len(rows)} rows")
        return buffer.getvalue()
