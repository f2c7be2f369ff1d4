"""JSON decoding that remembers the source line of every object."""

from __future__ import annotations

import bisect
import json
import json.decoder
import json.scanner

from ..errors import ParseError


class LocatedDict(dict):
    line = 0


class _LocatingDecoder(json.JSONDecoder):
    def __init__(self, text: str):
        super().__init__()
        newlines = [i for i, ch in enumerate(text) if ch == "\n"]

        def parse_object(s_and_end, *args):
            obj, end = json.decoder.JSONObject(s_and_end, *args)
            located = LocatedDict(obj)
            located.line = bisect.bisect_left(newlines, s_and_end[1]) + 1
            return located, end

        self.parse_object = parse_object
        # the C scanner ignores parse_object overrides
        self.scan_once = json.scanner.py_make_scanner(self)


def loads(text: str):
    try:
        return _LocatingDecoder(text).decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None


def line_of(obj, default: int = 0) -> int:
    return getattr(obj, "line", default)
