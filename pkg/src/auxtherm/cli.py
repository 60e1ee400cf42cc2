"""Command-line front end.

    auxtherm <poles|fcurve|heatcap|classical-energy|validate> --config PATH
             [--out DIR] [--prefactor paper|dos]

The configuration is an INI file; see ``demos/configs`` for examples.
Exit codes: 0 success, 1 validation failure, 2 configuration error,
3 subcritical temperature, 4 numerical convergence failure.
"""

import argparse
import configparser
import csv
import io
import os
import re
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .classical import FieldChannel, Medium, classical_energy, critical_temperature, default_k_grid
from .errors import ConfigError, ConvergenceError, DomainError, SubcriticalError
from .potentials import PotentialModel, PoleTerm, extract_channels
from .quantum import (
    PREFACTORS,
    ZERO_POINT_ENERGY,
    f_curve,
    f_curve_slope,
    field_energy,
    heat_capacity_contrib,
)
from .validation import run_validation

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_SUBCRITICAL = 3
EXIT_CONVERGENCE = 4

COMMANDS = ("poles", "fcurve", "heatcap", "classical-energy", "validate")

_GRID_KEYS = {"min", "max", "points", "spacing"}
_SECTION_KEYS = {
    "medium": {"N", "V", "m", "hbar", "c"},
    "units": {"hbar", "c"},
    "potential": {"kappa_policy"},
    "fcurve": {"alpha"},
    "heatcap": {"prefactor"},
    "classical_energy": {"T", "M"},
    "validate": {"bessel_fault"},
    "output": {"dir", "format"},
}
_GRID_SECTIONS = {"fcurve": "tau", "heatcap": "T"}
_CHANNEL_KEYS = {"mu", "kappa", "gamma", "sign"}
_POLE_KEYS = {"mu", "strength"}


@dataclass
class RunConfig:
    medium: Medium
    channels: list
    sections: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    source: str = "<config>"

    def where(self, section, key=None):
        line = self.lines.get((section, key)) or self.lines.get((section, None))
        loc = f"{self.source}:{line}" if line else self.source
        return f"{loc}: [{section}]" + (f" {key}" if key else "")

    def get(self, section, key, default=None):
        return self.sections.get(section, {}).get(key, default)

    def number(self, section, key, default=None):
        raw = self.get(section, key)
        if raw is None:
            if default is None:
                raise ConfigError(f"{self.where(section)}: missing key {key!r}")
            return default
        try:
            return float(raw)
        except ValueError:
            raise ConfigError(f"{self.where(section, key)}: not a number: {raw!r}") from None

    def numbers(self, section, key):
        raw = self.get(section, key)
        try:
            return [float(v) for v in raw.replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"{self.where(section, key)}: not a list of numbers: {raw!r}") from None

    def grid(self, section, name):
        """An explicit list ``name = a, b, c`` or ``name_min/_max/_points/_spacing``."""
        if self.get(section, name) is not None:
            values = self.numbers(section, name)
        elif self.get(section, f"{name}_min") is not None:
            lo = self.number(section, f"{name}_min")
            hi = self.number(section, f"{name}_max")
            points = int(self.number(section, f"{name}_points"))
            spacing = self.get(section, f"{name}_spacing", "log")
            if points < 1 or not hi >= lo:
                raise ConfigError(f"{self.where(section, name + '_points')}: bad grid")
            if spacing == "log":
                if not lo > 0:
                    raise ConfigError(f"{self.where(section, name + '_min')}: log grid needs min > 0")
                values = list(np.geomspace(lo, hi, points))
            elif spacing == "linear":
                values = list(np.linspace(lo, hi, points))
            else:
                raise ConfigError(f"{self.where(section, name + '_spacing')}: use log or linear")
        else:
            raise ConfigError(f"{self.where(section)}: missing grid {name!r}")
        return sorted(float(v) for v in values)


def _line_numbers(text):
    lines = {}
    section = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        header = re.match(r"\[(.+)\]$", stripped)
        if header:
            section = header.group(1).strip()
            lines[(section, None)] = number
        elif section and stripped and stripped[0] not in "#;":
            key = re.split(r"[=:]", stripped, maxsplit=1)[0].strip()
            lines[(section, key)] = number
    return lines


def _allowed_keys(section):
    if section in _SECTION_KEYS:
        keys = set(_SECTION_KEYS[section])
        grid = _GRID_SECTIONS.get(section)
        if grid:
            keys |= {grid} | {f"{grid}_{suffix}" for suffix in _GRID_KEYS}
        return keys
    if section.startswith("channel."):
        return _CHANNEL_KEYS
    if section.startswith("pole."):
        return _POLE_KEYS
    return None


def parse_config(text, source="<config>"):
    """Parse configuration text into a :class:`RunConfig`.

    Raises
    ------
    ConfigError
        On syntax errors, unknown sections or keys, or invalid values.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from None
    lines = _line_numbers(text)
    sections = {}
    for name in parser.sections():
        allowed = _allowed_keys(name)
        loc = f"{source}:{lines.get((name, None), '?')}"
        if allowed is None:
            raise ConfigError(f"{loc}: unknown section [{name}]")
        for key in parser[name]:
            if key not in allowed:
                line = lines.get((name, key), "?")
                raise ConfigError(f"{source}:{line}: unknown key {key!r} in [{name}]")
        sections[name] = dict(parser[name])

    cfg = RunConfig(medium=None, channels=[], sections=sections, lines=lines, source=source)
    if "medium" not in sections:
        raise ConfigError(f"{source}: missing [medium] section")
    for key in ("hbar", "c"):
        a, b = cfg.get("medium", key), cfg.get("units", key)
        if a is not None and b is not None and float(a) != float(b):
            raise ConfigError(f"{cfg.where('units', key)}: conflicts with [medium] {key}")
    hbar = cfg.number("units", "hbar", cfg.number("medium", "hbar", 1.0))
    c = cfg.number("units", "c", cfg.number("medium", "c", 1.0))
    try:
        cfg.medium = Medium(cfg.number("medium", "N"), cfg.number("medium", "V"),
                            cfg.number("medium", "m", 1.0), hbar, c)
    except DomainError as exc:
        raise ConfigError(f"{cfg.where('medium')}: {exc}") from None
    cfg.channels = _parse_channels(cfg)
    return cfg


def _parse_channels(cfg):
    channel_sections = [s for s in cfg.sections if s.startswith("channel.")]
    pole_sections = [s for s in cfg.sections if s.startswith("pole.")]
    if channel_sections and pole_sections:
        raise ConfigError(f"{cfg.source}: give either [channel.*] or [pole.*] sections, not both")
    channels = []
    for name in channel_sections:
        label = name.split(".", 1)[1]
        try:
            channels.append(FieldChannel(
                cfg.number(name, "mu"), cfg.number(name, "kappa"), cfg.number(name, "gamma"),
                int(cfg.number(name, "sign", 1.0)), label=label))
        except DomainError as exc:
            raise ConfigError(f"{cfg.where(name)}: {exc}") from None
    if pole_sections:
        try:
            terms = [PoleTerm(cfg.number(s, "mu"), cfg.number(s, "strength")) for s in pole_sections]
            model = PotentialModel.from_terms(terms)
        except DomainError as exc:
            raise ConfigError(f"{cfg.source}: {exc}") from None
        policy = cfg.get("potential", "kappa_policy", "unit")
        if policy != "unit":
            values = cfg.numbers("potential", "kappa_policy")
            policy = values[0] if len(values) == 1 else values
        channels = extract_channels(model, policy)
    return sorted(channels, key=lambda ch: ch.mu)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    return parse_config(text, source=str(path))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _fmt(value):
    return repr(float(value))


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def write_outputs(out_dir, files):
    """Write ``{name: text}`` atomically: every file goes to a temp name first."""
    os.makedirs(out_dir, exist_ok=True)
    staged = []
    try:
        for name, text in files.items():
            fd, tmp = tempfile.mkstemp(prefix=f".{name}.", dir=out_dir)
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            staged.append((tmp, os.path.join(out_dir, name)))
    except BaseException:
        for tmp, _ in staged:
            os.unlink(tmp)
        raise
    for tmp, final in staged:
        os.replace(tmp, final)
    return [final for _, final in staged]


# ---------------------------------------------------------------------------
# Commands; each returns (files, report_lines)
# ---------------------------------------------------------------------------


def cmd_poles(cfg, args):
    if not cfg.channels:
        raise ConfigError(f"{cfg.source}: no channels or poles defined")
    medium = cfg.medium
    crit = critical_temperature(cfg.channels, medium)
    rows = []
    for ch, t_crit in zip(cfg.channels, crit.per_channel):
        rows.append([ch.name(), float(ch.mu), float(ch.kappa), float(ch.gamma), ch.sign,
                     ch.T_char(medium), ch.alpha(medium), t_crit])
    header = ["channel", "mu", "kappa", "gamma", "sign", "T_s", "alpha", "T_crit"]
    report = [" ".join(f"{h:>12s}" for h in header)]
    for row in rows:
        report.append(" ".join(f"{v:>12s}" if isinstance(v, str) else f"{v:>12.6g}" for v in row))
    report.append(f"global threshold (max over channels): {crit.threshold!r}")
    report.append(f"lowest channel threshold (min over channels): {crit.lowest!r}")
    return {"poles.csv": csv_text(header, rows)}, report


def fcurve_rows(alpha, grid):
    bad = [t for t in grid if not t > alpha]
    if bad:
        raise SubcriticalError(
            f"tau grid points at or below alpha={alpha!r}: {', '.join(map(repr, bad))}",
            points=bad,
        )
    return [[t, f_curve(alpha, t), f_curve_slope(alpha, t)] for t in grid]


def cmd_fcurve(cfg, args):
    grid = cfg.grid("fcurve", "tau")
    if cfg.get("fcurve", "alpha") is not None:
        targets = {"fcurve.csv": cfg.number("fcurve", "alpha")}
    elif cfg.channels:
        targets = {f"fcurve_{ch.name()}.csv": ch.alpha(cfg.medium) for ch in cfg.channels}
    else:
        raise ConfigError(f"{cfg.where('fcurve')}: give alpha or define channels")
    files = {}
    report = []
    for name, alpha in targets.items():
        files[name] = csv_text(["tau", "f", "f2"], fcurve_rows(alpha, grid))
        report.append(f"{name}: alpha={alpha!r}, {len(grid)} points")
    return files, report


def _prefactor(cfg, args):
    value = args.prefactor or cfg.get("heatcap", "prefactor", "paper")
    if value not in PREFACTORS:
        raise ConfigError(f"{cfg.where('heatcap', 'prefactor')}: must be one of {PREFACTORS}")
    return value


def cmd_heatcap(cfg, args):
    if not cfg.channels:
        raise ConfigError(f"{cfg.source}: heatcap needs at least one channel")
    medium = cfg.medium
    grid = cfg.grid("heatcap", "T")
    prefactor = _prefactor(cfg, args)
    bad = [(ch.name(), T) for ch in cfg.channels for T in grid
           if not T > ch.critical_temperature(medium)]
    if bad:
        listed = ", ".join(f"(s={s}, T={T!r})" for s, T in bad)
        raise SubcriticalError(f"temperatures at or below a channel threshold: {listed}",
                               points=[T for _, T in bad])
    files = {}
    totals_w = [0.0] * len(grid)
    totals_cv = [0.0] * len(grid)
    for ch in cfg.channels:
        rows = []
        for i, T in enumerate(grid):
            W = field_energy(ch, medium, T, prefactor=prefactor)
            cv = heat_capacity_contrib(ch, medium, T, prefactor=prefactor)
            totals_w[i] += W
            totals_cv[i] += cv
            rows.append([T, T / ch.T_char(medium), W, cv])
        files[f"heatcap_{ch.name()}.csv"] = csv_text(["T", "tau", "W", "Cv"], rows)
    files["heatcap_total.csv"] = csv_text(
        ["T", "W", "Cv"], [[T, w, cv] for T, w, cv in zip(grid, totals_w, totals_cv)])
    report = [f"{name}" for name in files]
    report.append(f"prefactor: {prefactor}; {ZERO_POINT_ENERGY}, excluded from W")
    return files, report


def cmd_classical_energy(cfg, args):
    section = "classical_energy"
    T = cfg.number(section, "T")
    if not T > 0:
        raise ConfigError(f"{cfg.where(section, 'T')}: temperature must be positive")
    counts = []
    for value in cfg.numbers(section, "M"):
        if value < 0 or value != int(value):
            raise ConfigError(f"{cfg.where(section, 'M')}: mode counts must be integers >= 0")
        counts.append(int(value))
    counts = sorted(set(counts))
    rows = []
    for M in counts:
        k_grid = default_k_grid(cfg.medium, M)
        rows.append([M, classical_energy(cfg.channels, cfg.medium, 1.0 / T, k_grid)])
    return {"classical_energy.csv": csv_text(["M", "E"], rows)}, [
        f"classical_energy.csv: {len(rows)} mode cutoffs at T={T!r}"]


def cmd_validate(cfg, args):
    fault = cfg.number("validate", "bessel_fault", 0.0) if cfg else 0.0
    results = run_validation(bessel_fault=fault)
    report = [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    report.append(f"{len(results) - failed}/{len(results)} checks passed")
    return {}, report, failed == 0


_DISPATCH = {
    "poles": cmd_poles,
    "fcurve": cmd_fcurve,
    "heatcap": cmd_heatcap,
    "classical-energy": cmd_classical_energy,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="auxtherm",
        description="Thermodynamics of atoms coupled to auxiliary Klein-Gordon fields.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="INI configuration file (optional for validate)")
    parser.add_argument("--out", help="output directory (default: [output] dir or '.')")
    parser.add_argument("--prefactor", choices=PREFACTORS,
                        help="field-energy prefactor convention (default: paper)")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else None
        if args.command == "validate":
            _, report, ok = cmd_validate(cfg, args)
            print("\n".join(report))
            return EXIT_OK if ok else EXIT_VALIDATION
        if cfg is None:
            raise ConfigError(f"{args.command} requires --config")
        fmt = cfg.get("output", "format", "csv")
        if fmt != "csv":
            raise ConfigError(f"{cfg.where('output', 'format')}: only csv is supported")
        files, report = _DISPATCH[args.command](cfg, args)
        out_dir = args.out or cfg.get("output", "dir", ".")
        written = write_outputs(out_dir, files)
        print("\n".join(report))
        for path in written:
            print(f"wrote {path}")
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SubcriticalError as exc:
        print(f"subcritical: {exc}", file=sys.stderr)
        return EXIT_SUBCRITICAL
    except ConvergenceError as exc:
        print(f"convergence failure: {exc} (best estimate {exc.estimate!r}, "
              f"error bound {exc.error!r})", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
