#!/usr/bin/env python3
"""
JSON export provider
"""

import json
import logging
from typing import Any

logger = logging.getLogger(__name__)


class Provider:
    """Canonical JSON: sorted keys, compact unless pretty"""

    def render(self, payload: Any, pretty: bool = False, **options) -> str:
        if hasattr(payload, "to_dict"):
            payload = payload.to_dict()
        if pretty:
            text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
        else:
            text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return text + "\n"
