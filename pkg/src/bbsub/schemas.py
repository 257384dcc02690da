"""JSON schemas of the command-line reports."""

NUMBER = {"oneOf": [{"type": "number"}, {"type": "string", "enum": ["inf", "-inf", "nan"]}]}
NULLABLE_NUMBER = {"oneOf": [NUMBER, {"type": "null"}]}

PARAMS = {
    "type": "object",
    "properties": {k: {"type": "number"} for k in ("A", "B", "beta", "gamma")},
    "required": ["A", "B", "beta", "gamma"],
}

MARGIN = {
    "type": "object",
    "properties": {"id": {"type": "string"}, "value": NUMBER, "strict": {"type": "boolean"}, "ok": {"type": "boolean"}},
    "required": ["id", "value", "strict", "ok"],
}

HYPOTHESIS = {
    "type": "object",
    "properties": {
        "schema": {"const": "hypothesis"},
        "theorem": {"type": "string"},
        "satisfied": {"type": "boolean"},
        "params": PARAMS,
        "margins": {"type": "array", "items": MARGIN},
        "notes": {"type": "array", "items": {"type": "string"}},
        "corollary": {"type": ["object", "null"]},
    },
    "required": ["schema", "theorem", "satisfied", "params", "margins"],
}

INTERVAL = {
    "type": "object",
    "properties": {
        "schema": {"const": "interval"},
        "theorem": {"type": "string"},
        "free": {"type": "string"},
        "fixed": {"type": "object"},
        "intervals": {"type": "array", "items": {"type": "array", "items": NUMBER, "minItems": 2, "maxItems": 2}},
        "scan": {"type": "object"},
    },
    "required": ["schema", "theorem", "free", "intervals"],
}

GAP_REPORT = {
    "type": "object",
    "properties": {
        "schema": {"const": "gap_report"},
        "theorem": {"type": "string"},
        "params": PARAMS,
        "min_gap": NUMBER,
        "argmin": {
            "type": "object",
            "properties": {"t": {"type": "number"}, "k": {"type": "number"}, "m": NULLABLE_NUMBER},
            "required": ["t", "k", "m"],
        },
        "grid": {"type": "object", "required": ["t_points", "k_points", "k_max", "refinements"]},
        "endpoints": {"type": "object", "required": ["k_1", "k_max"]},
        "large_k": {"type": "object"},
        "poles": {"type": "array"},
        "pole_count": {"type": "integer"},
        "verdict": {"enum": ["pass", "fail", "inconclusive"]},
    },
    "required": ["schema", "theorem", "params", "min_gap", "argmin", "grid", "endpoints", "verdict"],
}

SUBORD = {
    "type": "object",
    "properties": {
        "schema": {"const": "subord"},
        "min_gap": NUMBER,
        "argmin": {"type": "object", "properties": {"r": {"type": "number"}, "theta": {"type": "number"}},
                   "required": ["r", "theta"]},
        "radii": {"type": "array", "items": {"type": "number"}},
        "samples_per_circle": {"type": "integer", "minimum": 1},
        "verdict": {"enum": ["contained", "violated", "inconclusive"]},
        "target": {"type": "string"},
        "function": {"type": "string"},
        "failures": {"type": "integer"},
    },
    "required": ["schema", "min_gap", "argmin", "radii", "samples_per_circle", "verdict"],
}

BERNARDI = {
    "type": "object",
    "properties": {
        "schema": {"const": "bernardi"},
        "base": {"type": "string"},
        "c": {"type": "number"},
        "mode": {"enum": ["ratio", "derivative", "raw"]},
        "values": {"type": "array", "items": {"type": "object", "required": ["z", "F"]}},
        "membership": SUBORD,
    },
    "required": ["schema", "base", "c", "mode", "membership"],
}

SCHEMAS = {
    "hypothesis": HYPOTHESIS,
    "interval": INTERVAL,
    "gap_report": GAP_REPORT,
    "subord": SUBORD,
    "bernardi": BERNARDI,
}
