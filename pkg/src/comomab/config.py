"""Experiment configuration files.

An INI-style file with three sections::

    [experiment]
    name = paper6
    horizon = 100000
    runs = 5
    seed = 2018
    checkpoint_stride = 100

    [env]
    kind = comm
    m = 2
    ...

    [policies]
    como_ucb =
    pareto_ucb1 = k_star=9

Policy parameters are ``key=value`` pairs separated by commas. Unknown
sections and keys are rejected.
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .envs import (
    CommConfig,
    CommEnvironment,
    RecConfig,
    RecommenderEnvironment,
    RoutingConfig,
    RoutingEnvironment,
    read_edge_list,
)
from .envs.comm import paper6_rates
from .exceptions import ConfigError
from .policies import POLICIES, make_policy

EXPERIMENT_KEYS = {"name", "horizon", "runs", "seed", "checkpoint_stride"}
ENV_KEYS = {
    "comm": ({"m", "q", "h", "lambda"}, {"snr", "rate_schedule", "rates"}),
    "recommender": (
        {"n_items", "slate_size", "n_users", "type_probs", "like_probs"},
        {"diversity"},
    ),
    "routing": ({"graph_file", "source", "destination"}, {"max_path_length"}),
}
POLICY_PARAMS = {
    "como_ucb": set(),
    "pareto_ucb1": {"k_star"},
    "llr": {"objective"},
    "so_ucb1": {"objective"},
}


@dataclass
class RunConfig:
    name: str
    horizon: int
    runs: int
    seed: int
    checkpoint_stride: int
    env: dict
    policies: list = field(default_factory=list)
    base_dir: Path = field(default=Path("."), compare=False)

    def to_ini(self) -> str:
        cp = configparser.ConfigParser(interpolation=None)
        cp.optionxform = str
        cp["experiment"] = {
            "name": self.name,
            "horizon": str(self.horizon),
            "runs": str(self.runs),
            "seed": str(self.seed),
            "checkpoint_stride": str(self.checkpoint_stride),
        }
        cp["env"] = dict(self.env)
        cp["policies"] = {
            pid: ", ".join(f"{k}={v}" for k, v in params.items()) for pid, params in self.policies
        }
        buf = io.StringIO()
        cp.write(buf)
        return buf.getvalue().rstrip() + "\n"


def _int(section, key, raw, lo=None):
    try:
        val = int(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {raw!r}") from None
    if lo is not None and val < lo:
        raise ConfigError(f"[{section}] {key}: must be >= {lo}, got {val}")
    return val


def _floats(section, key, raw) -> list:
    parts = raw.replace(",", " ").split()
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"[{section}] {key}: expected a list of numbers") from None
    if not vals or not all(np.isfinite(vals)):
        raise ConfigError(f"[{section}] {key}: expected a non-empty list of finite numbers")
    return vals


def _parse_policy_params(pid, raw) -> dict:
    allowed = POLICY_PARAMS[pid]
    params = {}
    for item in filter(None, (p.strip() for p in (raw or "").split(","))):
        if "=" not in item:
            raise ConfigError(f"[policies] {pid}: parameter {item!r} is not key=value")
        k, v = (s.strip() for s in item.split("=", 1))
        if k not in allowed:
            raise ConfigError(f"[policies] {pid}: unknown parameter {k!r}")
        params[k] = _int("policies", f"{pid}.{k}", v, lo=0)
    if pid == "pareto_ucb1":
        if params.get("k_star", 0) < 1:
            raise ConfigError("[policies] pareto_ucb1: k_star must be given and >= 1")
    return params


def parse_config(text: str, base_dir=".") -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, allow_no_value=True)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax: {exc}") from None

    extra = set(cp.sections()) - {"experiment", "env", "policies"}
    if extra:
        raise ConfigError(f"unknown section(s): {sorted(extra)}")
    for sec in ("experiment", "env", "policies"):
        if not cp.has_section(sec):
            raise ConfigError(f"missing section [{sec}]")

    exp = cp["experiment"]
    unknown = set(exp) - EXPERIMENT_KEYS
    if unknown:
        raise ConfigError(f"[experiment] unknown key {sorted(unknown)[0]!r}")
    for k in ("horizon", "runs", "seed"):
        if exp.get(k) in (None, ""):
            raise ConfigError(f"[experiment] missing required key {k!r}")

    env = {k: (v or "").strip() for k, v in cp["env"].items()}
    kind = env.get("kind")
    if kind not in ENV_KEYS:
        raise ConfigError(f"[env] kind: must be one of {sorted(ENV_KEYS)}, got {kind!r}")
    required, optional = ENV_KEYS[kind]
    unknown = set(env) - required - optional - {"kind"}
    if unknown:
        raise ConfigError(f"[env] unknown key {sorted(unknown)[0]!r} for kind={kind}")
    missing = required - set(k for k, v in env.items() if v)
    if missing:
        raise ConfigError(f"[env] missing required key {sorted(missing)[0]!r}")

    policies = []
    for pid, raw in cp["policies"].items():
        if pid not in POLICIES:
            raise ConfigError(f"[policies] unknown policy {pid!r}")
        policies.append((pid, _parse_policy_params(pid, raw)))
    if not policies:
        raise ConfigError("[policies] at least one policy is required")

    cfg = RunConfig(
        name=(exp.get("name") or "experiment").strip(),
        horizon=_int("experiment", "horizon", exp["horizon"], lo=1),
        runs=_int("experiment", "runs", exp["runs"], lo=1),
        seed=_int("experiment", "seed", exp["seed"], lo=0),
        checkpoint_stride=_int("experiment", "checkpoint_stride", exp.get("checkpoint_stride") or "100", lo=1),
        env=env,
        policies=policies,
        base_dir=Path(base_dir),
    )
    # validate the environment parameters now so errors surface at parse time
    try:
        build_environment(cfg)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"[env] {exc}") from None
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, base_dir=path.parent)


def build_environment(cfg: RunConfig):
    env = cfg.env
    kind = env["kind"]
    if kind == "comm":
        m = _int("env", "m", env["m"], lo=1)
        q = _int("env", "q", env["q"], lo=1)
        h = _int("env", "h", env["h"], lo=1)
        lam = _floats("env", "lambda", env["lambda"])
        if len(lam) != m * q:
            raise ConfigError(f"[env] lambda: expected {m * q} values (m*q), got {len(lam)}")
        snr = _floats("env", "snr", env.get("snr") or "1")
        if len(snr) != 1 or snr[0] <= 0:
            raise ConfigError("[env] snr: expected one positive number")
        snr = snr[0]
        if min(lam) <= 0:
            raise ConfigError("[env] lambda: entries must be positive")
        schedule = env.get("rate_schedule") or "paper6"
        if schedule == "paper6":
            if h != 3:
                raise ConfigError("[env] rate_schedule: paper6 needs h = 3")
            if env.get("rates"):
                raise ConfigError("[env] rates: only allowed with rate_schedule = explicit")
            if q < m:
                raise ConfigError(f"[env] q: {q} channels cannot serve m={m} users")
            rates = paper6_rates(np.reshape(lam, (m, q)))
        elif schedule == "explicit":
            if not env.get("rates"):
                raise ConfigError("[env] rates: required with rate_schedule = explicit")
            rates = _floats("env", "rates", env["rates"])
            if len(rates) != m * q * h:
                raise ConfigError(f"[env] rates: expected {m * q * h} values (m*q*h)")
        else:
            raise ConfigError(f"[env] rate_schedule: must be paper6 or explicit, got {schedule!r}")
        return CommEnvironment(CommConfig(m=m, q=q, h=h, lam=lam, snr=snr, rates=rates))
    if kind == "recommender":
        type_probs = _floats("env", "type_probs", env["type_probs"])
        like = _floats("env", "like_probs", env["like_probs"])
        n_items = _int("env", "n_items", env["n_items"], lo=1)
        if len(like) != len(type_probs) * n_items:
            raise ConfigError("[env] like_probs: expected len(type_probs) * n_items values")
        return RecommenderEnvironment(
            RecConfig(
                n_items=n_items,
                slate_size=_int("env", "slate_size", env["slate_size"], lo=1),
                n_users=_int("env", "n_users", env["n_users"], lo=1),
                type_probs=type_probs,
                like_probs=like,
                diversity=env.get("diversity") or "cosine",
            )
        )
    graph = Path(env["graph_file"])
    if not graph.is_absolute():
        graph = cfg.base_dir / graph
    try:
        edges = read_edge_list(graph)
    except OSError as exc:
        raise ConfigError(f"[env] graph_file: cannot read {graph}: {exc.strerror}") from None
    cap = env.get("max_path_length")
    return RoutingEnvironment(
        RoutingConfig(
            edges=edges,
            source=env["source"],
            destination=env["destination"],
            max_path_length=_int("env", "max_path_length", cap, lo=1) if cap else None,
        )
    )


def build_policies(cfg: RunConfig) -> list:
    return [make_policy(pid, **params) for pid, params in cfg.policies]
