#!/usr/bin/env python3
"""
qsw - random walks from Hopf endomorphisms of quasisymmetric functions.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

import sys
from functools import wraps
from math import factorial

import click

from characters import CHARACTER_GRAMMAR, parse_character
from combinatorics import as_permutation, compositions, parse_composition
from endomorphism import (
    convolution_column_check, descent_class_law, expects_uniform_stationary, is_bhr_distribution,
    k_full, kbar, peak_lumped_matrix, phi_matrix, qs_star_composition_law, qs_star_distribution,
    right_ideal_check, stationary, verify_lumping,
)
from errors import QswError, SpecSyntaxError
from lyndon import a_matrix, lyndon_expand
from serialization import Encoder, dumps, load_transition, records_csv, transition_csv, write_output
from settings import check_cap, configure, reset
from shuffles import MODEL_GRAMMAR, parse_model, simulate
from spectral import block_invariance, diagonalizable, eigenvalue, spectrum, verify_eigen, z_alpha


class CharacterParam(click.ParamType):
    name = "character"

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return parse_character(value)
        except SpecSyntaxError as exc:
            self.fail(f"{exc.token!r}: expected {CHARACTER_GRAMMAR}", param, ctx)
        except OSError as exc:
            self.fail(f"cannot read u-file: {exc}", param, ctx)


class CompositionParam(click.ParamType):
    name = "composition"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_composition(value)
        except (SpecSyntaxError, QswError):
            self.fail(f"{value!r}: expected comma-separated positive parts like 2,1", param, ctx)


CHARACTER = CharacterParam()
COMPOSITION = CompositionParam()


def domain_errors(func):
    """Report QswError on stderr and exit 1."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except QswError as exc:
            click.echo(f"❌ {exc}", err=True)
            sys.exit(1)
    return wrapper


def output_options(func):
    func = click.option("--out", "out", type=click.Path(dir_okay=False), help="Write to a file instead of stdout.")(func)
    func = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)(func)
    func = click.option("--float", "as_float", is_flag=True, help="Decimal output instead of exact rationals.")(func)
    return func


def n_option(func):
    return click.option("--n", "n", type=click.IntRange(min=0), required=True, help="Grade / deck size.")(func)


def char_option(func):
    return click.option("--char", "char", type=CHARACTER, default="theta", show_default=True,
                        help=CHARACTER_GRAMMAR)(func)


def _emit_matrix(matrix, as_float, fmt, out):
    enc = Encoder(as_float)
    text = transition_csv(matrix, enc) if fmt == "csv" else dumps(enc.transition(matrix))
    write_output(text, out)


@click.group()
@click.option("--force", is_flag=True, help="Disable every size cap.")
@click.option("--verbose", is_flag=True, help="Status messages on stderr.")
def cli(force, verbose):
    """Exact transition matrices, spectra and simulations for QSym random walks."""
    reset()
    changes = {}
    if force:
        changes["force"] = True
    if verbose:
        changes["verbose"] = True
    if changes:
        configure(**changes)


@cli.command("kbar")
@n_option
@char_option
@output_options
@domain_errors
def kbar_cmd(n, char, as_float, fmt, out):
    """K-bar on compositions of n."""
    check_cap("comp", n, "kbar")
    _emit_matrix(kbar(char, n), as_float, fmt, out)


@cli.command("phi")
@n_option
@char_option
@click.option("--basis", type=click.Choice(["m", "f"], case_sensitive=False), default="f", show_default=True,
              help="Monomial or fundamental basis.")
@output_options
@domain_errors
def phi_cmd(n, char, basis, as_float, fmt, out):
    """Matrix of Phi_n: row alpha holds the coefficients of Phi(B_alpha)."""
    check_cap("comp", n, "phi")
    matrix = phi_matrix(char, n, basis.upper())
    enc = Encoder(as_float)
    text = transition_csv(matrix, enc) if fmt == "csv" else dumps(enc.endo(matrix))
    write_output(text, out)


@cli.command("kfull")
@n_option
@char_option
@output_options
@domain_errors
def kfull_cmd(n, char, as_float, fmt, out):
    """K on permutations of n."""
    check_cap("brute", n, "kfull")
    _emit_matrix(k_full(char, n), as_float, fmt, out)


@cli.command("khat")
@n_option
@output_options
@domain_errors
def khat_cmd(n, as_float, fmt, out):
    """K-hat for Theta on peak classes."""
    check_cap("comp", n, "khat")
    lump = peak_lumped_matrix(n)
    if fmt == "csv":
        write_output(transition_csv(lump.khat, Encoder(as_float)), out)
    else:
        write_output(dumps(Encoder(as_float).lump(lump)), out)


@cli.command("dist")
@n_option
@char_option
@click.option("--level", type=click.Choice(["perm", "comp"]), default="perm", show_default=True)
@output_options
@domain_errors
def dist_cmd(n, char, level, as_float, fmt, out):
    """The QS*-distribution, on permutations or on descent compositions."""
    enc = Encoder(as_float)
    if level == "perm":
        check_cap("brute", n, "dist")
        law = qs_star_distribution(char, n)
    else:
        check_cap("comp", n, "dist")
        law = qs_star_composition_law(char, n)
    if fmt == "csv":
        write_output(records_csv(["state", "probability"],
                                 ((",".join(map(str, s)), enc.number(p)) for s, p in law.items())), out)
    else:
        write_output(dumps(enc.distribution(law)), out)


@cli.command("stationary")
@click.option("--n", "n", type=click.IntRange(min=0))
@char_option
@click.option("--in", "source", type=click.Path(exists=True, dir_okay=False),
              help="Read a matrix emitted by kbar/kfull/khat.")
@click.option("--space", type=click.Choice(["comp", "perm"]), default="comp", show_default=True)
@output_options
@domain_errors
def stationary_cmd(n, char, source, space, as_float, fmt, out):
    """Stationary law of K-bar (or K, or a matrix read from --in)."""
    if source:
        try:
            matrix = load_transition(source)
        except SpecSyntaxError as exc:
            raise click.BadParameter(f"{exc}; write the matrix without --float", param_hint="--in")
    elif n is None:
        raise click.UsageError("give --n or --in")
    elif space == "perm":
        check_cap("brute", n, "stationary")
        matrix = k_full(char, n)
    else:
        check_cap("comp", n, "stationary")
        matrix = kbar(char, n)
    result = stationary(matrix)
    enc = Encoder(as_float)
    if fmt == "csv" and result.distribution:
        write_output(records_csv(["state", "probability"],
                                 ((",".join(map(str, s)) if isinstance(s, tuple) else str(s), enc.number(p)) for s, p in result.distribution.items())), out)
    else:
        write_output(dumps(enc.stationary(result)), out)


@cli.command("spectrum")
@n_option
@char_option
@click.option("--normalize", is_flag=True, help="Divide by lambda^n (eigenvalues of K-bar).")
@output_options
@domain_errors
def spectrum_cmd(n, char, normalize, as_float, fmt, out):
    """Eigenvalues lambda_alpha of Phi_n."""
    check_cap("comp", n, "spectrum")
    spec = spectrum(char, n)
    if normalize:
        norm = char.lam(1) ** n
        if norm == 0:
            raise QswError("lambda^n is zero; cannot normalize")
        spec = spec.normalized(norm)
    enc = Encoder(as_float)
    pairs = [(list(a), enc.number(v)) for a, v in spec.eigenvalues]
    if fmt == "csv":
        write_output(records_csv(["composition", "eigenvalue"],
                                 ((",".join(map(str, a)), v) for a, v in pairs)), out)
    else:
        write_output(dumps({"n": n, "charpoly_agrees": spec.charpoly_agrees,
                            "eigenvalues": [{"comp": a, "value": v} for a, v in pairs]}), out)


@cli.command("zvec")
@click.option("--alpha", "alpha", type=COMPOSITION, required=True)
@char_option
@output_options
@domain_errors
def zvec_cmd(alpha, char, as_float, fmt, out):
    """Eigenvector Z_alpha in the X basis."""
    check_cap("comp", sum(alpha), "zvec")
    z = z_alpha(char, alpha)
    enc = Encoder(as_float)
    if fmt == "csv":
        write_output(records_csv(["composition", "coefficient"],
                                 ((",".join(map(str, a)), enc.number(c)) for a, c in z.element.items())), out)
    else:
        write_output(dumps({"index": list(z.index), "element": enc.delement(z.element)}), out)


@cli.command("diag")
@n_option
@char_option
@output_options
@domain_errors
def diag_cmd(n, char, as_float, fmt, out):
    """Diagonalizability certificate: eigenbasis and kernel."""
    check_cap("comp", n, "diag")
    report = diagonalizable(char, n)
    enc = Encoder(as_float)
    payload = {"diagonalizable": report.ok, "reason": report.reason, "rank": report.rank,
               "nonzero_eigenvalues": report.nonzero_eigenvalues,
               "eigenbasis": [{"index": list(a), "element": enc.delement(w)}
                              for a, w in report.eigenbasis.items()],
               "kernel": [enc.delement(w) for w in report.kernel]}
    write_output(dumps(payload), out)
    if not report.ok:
        sys.exit(1)


@cli.command("amatrix")
@n_option
@output_options
@domain_errors
def amatrix_cmd(n, as_float, fmt, out):
    """The universal matrix A_n with polynomial entries."""
    matrix = a_matrix(n)
    payload = Encoder(as_float).amatrix(matrix)
    if fmt == "csv":
        labels = [",".join(map(str, s)) for s in payload["states"]]
        write_output(records_csv(["from"] + labels,
                                 ([lab] + row for lab, row in zip(labels, payload["rows"]))), out)
    else:
        write_output(dumps(payload), out)


@cli.command("lyndon")
@click.option("--comp", "comp", type=COMPOSITION, required=True)
@domain_errors
def lyndon_cmd(comp):
    """Straighten M_comp into Lyndon generators."""
    if not comp:
        raise click.BadParameter("composition must be nonempty", param_hint="--comp")
    click.echo(str(lyndon_expand(comp)))


@cli.command("simulate")
@click.option("--model", "model_spec", required=True, help=MODEL_GRAMMAR)
@n_option
@click.option("--steps", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--start", "start", default=None, help="Starting permutation, e.g. 1,3,2.")
@output_options
@domain_errors
def simulate_cmd(model_spec, n, steps, trials, seed, start, as_float, fmt, out):
    """Monte Carlo law of descent compositions, next to the exact row."""
    try:
        model = parse_model(model_spec, n)
    except SpecSyntaxError as exc:
        raise click.BadParameter(f"{exc.token!r}: expected {MODEL_GRAMMAR}", param_hint="--model")
    check_cap("comp", n, "simulate")
    start_perm = as_permutation(parse_composition(start)) if start else None
    result = simulate(model, steps, trials, seed, start_perm)
    enc = Encoder(as_float)
    rows = [(",".join(map(str, a)), enc.number(p) if p is not None else "", f"{freq:.6f}", f"{se:.6f}")
            for a, p, freq, se in result.table()]
    if fmt == "csv":
        write_output(records_csv(["composition", "exact", "empirical", "stderr"], rows), out)
    else:
        write_output(dumps({"model": model.label(), "n": n, "steps": steps, "trials": trials, "seed": seed,
                            "within_4_sigma": result.within(4.0),
                            "cells": [{"comp": c, "exact": p, "empirical": float(f), "stderr": float(s)}
                                      for c, p, f, s in rows]}), out)


# --- verify ----------------------------------------------------------------------

@cli.group("verify")
def verify():
    """Exact checks; exit 1 when a check fails."""


def _report(name, ok, detail=""):
    click.echo(f"{name}: {'ok' if ok else 'FAILED'}{(' ' + detail) if detail else ''}")
    if not ok:
        sys.exit(1)


@verify.command("lumping")
@n_option
@char_option
@domain_errors
def verify_lumping_cmd(n, char):
    check_cap("brute", n, "verify lumping")
    result = verify_lumping(k_full(char, n), kbar(char, n))
    detail = "" if result.ok else f"witness pi={list(result.witness[0])} beta={list(result.witness[1])}"
    _report("lumping", result.ok, detail)


@verify.command("convolution")
@n_option
@char_option
@click.option("--m", "m", type=click.IntRange(min=1), default=2, show_default=True)
@domain_errors
def verify_convolution_cmd(n, char, m):
    _report("convolution", convolution_column_check(char, n, m))


@verify.command("stationary")
@n_option
@char_option
@domain_errors
def verify_stationary_cmd(n, char):
    check_cap("comp", n, "verify stationary")
    result = stationary(kbar(char, n))
    if expects_uniform_stationary(char, n):
        ok = result.unique and result.distribution == descent_class_law(n)
    else:
        ok = True
    _report("stationary", ok, f"kernel dimension {result.kernel_dimension}")


@verify.command("rightideal")
@n_option
@domain_errors
def verify_ideal_cmd(n):
    check_cap("brute", n, "verify rightideal")
    _report("rightideal", right_ideal_check(n))


@verify.command("bhr")
@n_option
@char_option
@domain_errors
def verify_bhr_cmd(n, char):
    result = is_bhr_distribution(char, n)
    click.echo(dumps(Encoder().bhr(result)))


@verify.command("eigen")
@n_option
@char_option
@domain_errors
def verify_eigen_cmd(n, char):
    check_cap("brute", n, "verify eigen")
    failures = [a for a in compositions(n) if eigenvalue(char, a) != 0 and not verify_eigen(char, a)]
    _report("eigen", not failures, f"failures {[list(a) for a in failures]}" if failures else "")


@verify.command("blocks")
@n_option
@char_option
@domain_errors
def verify_blocks_cmd(n, char):
    check_cap("brute", n, "verify blocks")
    _report("blocks", block_invariance(char, n), f"{factorial(n) - 2 ** max(n - 1, 0)} zero-sum dimensions")


if __name__ == "__main__":
    cli()
