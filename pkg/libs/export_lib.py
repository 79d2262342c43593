#!/usr/bin/env python3
"""
Export library for rendering results through pluggable format providers
"""

import importlib
import logging
import sys
from typing import Any, Optional

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "dot", "svg")


class ExportService:
    """Export wrapper for the output format providers"""

    def __init__(self, format_name: str = "json"):
        """Initialize export service with the specified format provider"""
        if format_name not in FORMATS:
            raise ValueError(f"Unknown export format {format_name!r}, expected one of {', '.join(FORMATS)}")

        self.format_name = format_name
        self.provider = None

        # Load the provider
        self._load_provider()

    def _load_provider(self) -> None:
        """Load providers.<format>_export"""
        try:
            provider_module = importlib.import_module(f"providers.{self.format_name}_export")
            self.provider = provider_module.Provider()
            logger.info(f"Loaded export provider: {self.format_name}")
        except ImportError as e:
            logger.error(f"Failed to load export provider {self.format_name}: {e}")
            raise

    def render(self, payload: Any, **options) -> str:
        if not self.provider:
            raise ValueError("No provider loaded")

        return self.provider.render(payload, **options)

    def write(self, payload: Any, destination: Optional[str] = None, **options) -> str:
        """Render and write to a file, or to stdout when no destination is given"""
        text = self.render(payload, **options)
        if destination is None or destination == "-":
            sys.stdout.write(text)
        else:
            with open(destination, "w", encoding="utf-8", newline="") as handle:
                handle.write(text)
            logger.info(f"Wrote {self.format_name} output to {destination}")
        return text
