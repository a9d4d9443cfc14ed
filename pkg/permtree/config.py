from dataclasses import dataclass, fields, replace
from typing import Any, Literal

from ruamel.yaml.error import YAMLError

from .errors import InvalidConfig, InvalidInput
from .perm import DEFAULT_NODE_BUDGET, PatternSet
from .yaml import loads as yaml_loads

INTEGER_OPTIONS = ("max_n", "depth", "series_order", "n_verify", "node_budget")


@dataclass(frozen=True)
class CliConfig:
    patterns: PatternSet | None = None
    command: str | None = None
    max_n: int = 10
    depth: int | None = None
    series_order: int = 32
    n_verify: int | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    output: Literal["text", "json"] = "text"
    allow_conjecture: bool = False
    method: Literal["oracle", "rules"] = "oracle"

    def __post_init__(self):
        for name in INTEGER_OPTIONS:
            value = getattr(self, name)
            if value is None and name in ("depth", "n_verify"):
                continue
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise InvalidConfig(f"{name} must be a positive integer, got {value!r}")
        if self.output not in ("text", "json"):
            raise InvalidConfig(f"output must be text or json, got {self.output!r}")
        if self.method not in ("oracle", "rules"):
            raise InvalidConfig(f"method must be oracle or rules, got {self.method!r}")
        if not isinstance(self.allow_conjecture, bool):
            raise InvalidConfig(f"allow_conjecture must be a boolean, got {self.allow_conjecture!r}")

    def verify_depth(self, B: PatternSet) -> int:
        """n_verify, defaulting to 11 when B has a pattern of length 3 and 10 otherwise."""
        if self.n_verify is not None:
            return self.n_verify
        return 11 if any(len(pattern) == 3 for pattern in B.patterns) else 10

    def merge(self, values: dict[str, Any]) -> "CliConfig":
        """Override with the given values, skipping the ones left unset (None)."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


_OPTIONS = {f.name for f in fields(CliConfig)} - {"command"}


def _patterns(value: Any) -> PatternSet:
    try:
        if isinstance(value, str):
            return PatternSet.parse(value)
        if isinstance(value, list):
            return PatternSet.of(str(item) for item in value)
    except InvalidInput as error:
        raise InvalidConfig(f"Invalid patterns in configuration: {error}") from error
    raise InvalidConfig(f"patterns must be a string or a list, got {value!r}")


def parse_config(text: str) -> dict[str, Any]:
    try:
        data = yaml_loads(text)
    except YAMLError as error:
        raise InvalidConfig(f"Invalid configuration file: {error}") from error
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidConfig("The configuration file must contain a mapping")
    values = {str(key).replace("-", "_"): value for key, value in data.items()}
    unknown = sorted(set(values) - _OPTIONS)
    if unknown:
        raise InvalidConfig(f"Unknown configuration keys: {', '.join(unknown)}")
    if "patterns" in values:
        values["patterns"] = _patterns(values["patterns"])
    return values


def load_config(path: str) -> CliConfig:
    try:
        with open(path) as file:
            values = parse_config(file.read())
    except OSError as error:
        raise InvalidConfig(f"Cannot read configuration {path}: {error}") from error
    try:
        return CliConfig(**values)
    except TypeError as error:
        raise InvalidConfig(str(error)) from error
