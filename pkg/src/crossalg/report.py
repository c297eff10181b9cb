"""Run the analyses a scenario asks for and assemble a versioned JSON report.

The human-readable table is rendered from that JSON and from nothing else.
"""

from __future__ import annotations

import math
import random

from . import __version__
from .crossed import (DegreeBasis, center_degree, center_degree_oracle, closure_by_degree,
                      commutant_degree, commutant_degree_oracle, commutes,
                      extract_commutant_generators, is_maximal_abelian, multiply,
                      random_element, safe_multiply)
from .dynamics import cycle_decomposition, per_infinity, sep_sets
from .errors import ClosureExceedsWindow, InternalInvariantViolation, NotUnital
from .exact_arith import format_scalar, span_contains
from .fourier import DualAutomorphism, disco_analog, disco_dual_map, dual_map_report
from .gelfand import GelfandIsomorphism
from .scenarios import Scenario, build_context, build_dual_map

REPORT_VERSION = 1
SAMPLES = 20


# --- formatting helpers ------------------------------------------------------

def fmt_vector(system, v) -> str:
    """Finite systems: value list. Rotations: Laurent polynomial in z."""
    if system.kind == 'rotation':
        D = (len(v) - 1) // 2
        terms = []
        for i, c in enumerate(v):
            if not c:
                continue
            k = i - D
            mono = '' if k == 0 else ('z' if k == 1 else f'z^{k}')
            coeff = format_scalar(c)
            if mono and coeff == '1':
                coeff = ''
            elif mono and coeff == '-1':
                coeff = '-'
            elif mono and ('+' in coeff[1:] or '-' in coeff[1:]):
                coeff = f'({coeff})'
            terms.append(f'{coeff}{mono}' if mono else coeff)
        return ' + '.join(terms).replace('+ -', '- ') or '0'
    return '(' + ', '.join(format_scalar(x) for x in v) + ')'


def _basis_json(system, basis) -> list[str]:
    return [fmt_vector(system, v) for v in basis]


def _mismatch(analysis, system, n, theorem, oracle):
    return InternalInvariantViolation(
        f'{analysis}: closed form and brute-force oracle differ at degree {n}',
        {'analysis': analysis, 'degree': n,
         'closed_form': _basis_json(system, theorem),
         'oracle': _basis_json(system, oracle)})


def _degree_table(ctx, window, analysis, theorem_fn, oracle_fn, oracle_only):
    rows = []
    bad = []
    for n in range(-window, window + 1):
        oracle = oracle_fn(ctx, n)
        row = {'degree': n}
        if oracle_only:
            row.update(dim=len(oracle), basis=_basis_json(ctx.system, oracle))
        else:
            theorem = theorem_fn(ctx, n)
            if theorem != oracle:
                bad.append((n, theorem, oracle))
            row.update(dim=len(theorem), basis=_basis_json(ctx.system, theorem),
                       oracle_dim=len(oracle), agrees=theorem == oracle)
        rows.append(row)
    if bad:
        # report the mismatch of least |n|
        n, theorem, oracle = min(bad, key=lambda t: (abs(t[0]), t[0]))
        raise _mismatch(analysis, ctx.system, n, theorem, oracle)
    return rows


def _nonzero_pattern(rows) -> str | None:
    degs = [r['degree'] for r in rows if r['degree'] != 0 and r['dim']]
    if not degs:
        return None
    g = math.gcd(*degs)
    window = max(abs(r['degree']) for r in rows)
    multiples = [n for n in range(-window, window + 1) if n and n % g == 0]
    return f'≡ 0 mod {g}' if degs == multiples else 'at ' + ', '.join(map(str, degs))


# --- system scenarios -------------------------------------------------------

def _system_section(ctx):
    s = ctx.system
    if s.kind == 'finite':
        cycles, order = cycle_decomposition(s)
        return {'type': 'finite', 'size': s.size, 'labels': list(s.labels),
                'sigma': list(s.sigma),
                'cycles': [[s.labels[x] for x in c] for c in cycles], 'order': order}
    out = {'type': 'rotation', 'zeta': format_scalar(s.zeta), 'laurent_window': s.window}
    if s.zeta_order is not None:
        out['zeta_root_of_unity_order'] = s.zeta_order
    else:
        out['zeta_not_root_of_unity_up_to'] = s.root_bound
    return out


def _algebra_section(ctx):
    A = ctx.A
    return {'dim': A.dim, 'basis': _basis_json(ctx.system, A.basis),
            'unital': A.unit is not None}


def _sep_section(ctx, window):
    A = ctx.A
    labels = getattr(ctx.system, 'labels', None)
    rows = []
    for n in range(1, window + 1):
        sep, per = sep_sets(A, n)
        rows.append({'n': n, 'sep': sep.describe(labels), 'per': per.describe(labels)})
    return {'table': rows, 'per_infinity': per_infinity(A).describe(labels)}


def _maximality_section(ctx, commutant_rows, oracle_only):
    if oracle_only:
        nonzero = [r['degree'] for r in commutant_rows if r['degree'] and r['dim']]
        return {'route': 'oracle within window', 'maximal_abelian': not nonzero,
                'nonzero_degrees': nonzero}
    verdict = is_maximal_abelian(ctx)
    out = {'route': 'domains of uniqueness', **verdict.to_json()}
    if verdict.witness is not None:
        out['witness'] = fmt_vector(ctx.system, verdict.witness)
    if commutant_rows is not None:
        # maximal iff the commutant vanishes off degree 0; exact when the window covers the range
        window = max(abs(r['degree']) for r in commutant_rows)
        nonzero = [r['degree'] for r in commutant_rows if r['degree'] and r['dim']]
        if verdict.decision and nonzero:
            raise InternalInvariantViolation(
                'maximal verdict but nonzero commutant off degree 0',
                {'degrees': nonzero})
        if not verdict.decision and window >= verdict.failing_degree and not nonzero:
            raise InternalInvariantViolation(
                'non-maximal verdict but empty commutant off degree 0',
                {'failing_degree': verdict.failing_degree})
    return out


def _gelfand_section(ctx, rng, window):
    iso = GelfandIsomorphism(ctx)
    cs = iso.cs
    hat = iso.target
    cycles, _ = cycle_decomposition(hat.system)
    degrees = range(-2, 3)
    for _ in range(SAMPLES):
        f = random_element(ctx, rng, degrees)
        g = random_element(ctx, rng, degrees)
        if iso(multiply(ctx, f, g)) != multiply(hat, iso(f), iso(g)):
            raise InternalInvariantViolation('Gelfand map does not preserve a product',
                                             {'f': f.to_json(), 'g': g.to_json()})
        if iso.inverse(iso(f)) != f:
            raise InternalInvariantViolation('Gelfand map is not inverted', {'f': f.to_json()})
    dims_src = [len(commutant_degree_oracle(ctx, n)) for n in range(-window, window + 1)]
    dims_hat = [len(commutant_degree(hat, n)) for n in range(-window, window + 1)]
    if dims_src != dims_hat:
        raise InternalInvariantViolation('commutant dimensions differ across the Gelfand map',
                                         {'source': dims_src, 'image': dims_hat})
    max_src = is_maximal_abelian(ctx).decision
    max_hat = is_maximal_abelian(hat).decision
    if max_src != max_hat:
        raise InternalInvariantViolation('maximality differs across the Gelfand map', {})
    return {
        'characters': len(cs),
        'character_labels': list(cs.labels),
        'induced_permutation': list(cs.induced_sigma),
        'induced_cycles': [[cs.labels[i] for i in c] for c in cycles],
        'product_checks': SAMPLES,
        'commutant_dims_equal': True,
        'maximal_abelian_source': max_src,
        'maximal_abelian_image': max_hat,
    }


def _generators_section(ctx, window):
    if ctx.system.kind != 'finite':
        return {'skipped': 'needs a finite system'}
    try:
        gens = extract_commutant_generators(ctx)
    except NotUnital:
        return {'skipped': 'A is not unital'}
    W = max(window, 2 * ctx.system.order)
    closure = closure_by_degree(ctx, gens, W, ctx.system.order)
    mism = [n for n in range(-W, W + 1)
            if closure.degrees[n] != commutant_degree(ctx, n)]
    if mism:
        n = min(mism, key=abs)
        raise _mismatch('generators', ctx.system, n, commutant_degree(ctx, n), closure.degrees[n])
    return {'count': len(gens),
            'generators': [{'degree': g.terms[0][0],
                            'coefficient': fmt_vector(ctx.system, g.terms[0][1])} for g in gens],
            'closure_window': W,
            'closure_equals_commutant': True}


def _low_degree(ctx, basis):
    # rotation products must stay inside the window; keep |k| <= D/3 so triple products fit
    if ctx.system.kind != 'rotation':
        return tuple(basis)
    D = ctx.system.window
    keep = D // 3
    return tuple(v for v in basis
                 if all(abs(i - D) <= keep for i, x in enumerate(v) if x))


def _sampling_section(ctx, rng, window):
    """Seeded spot checks: associativity on random triples, commutation inside A'."""
    degrees = range(-min(window, 3), min(window, 3) + 1)
    dim = ctx.system.dim
    algebra = DegreeBasis(dim, {n: _low_degree(ctx, ctx.A.basis) for n in degrees})
    assoc = 0
    for _ in range(SAMPLES):
        f, g, h = (random_element(ctx, rng, degrees, space=algebra) for _ in range(3))
        if f.is_zero() or g.is_zero() or h.is_zero():
            continue
        fg, gh = safe_multiply(ctx, f, g), safe_multiply(ctx, g, h)
        if fg is None or gh is None:
            continue
        left, right = safe_multiply(ctx, fg, h), safe_multiply(ctx, f, gh)
        if left is None or right is None:
            continue
        if left != right:
            raise InternalInvariantViolation('twisted convolution is not associative',
                                             {'f': f.to_json(), 'g': g.to_json(), 'h': h.to_json()})
        assoc += 1
    space = DegreeBasis(dim, {n: _low_degree(ctx, commutant_degree_oracle(ctx, n))
                              for n in degrees})
    pairs = 0
    for _ in range(SAMPLES):
        f = random_element(ctx, rng, degrees, space=space)
        g = random_element(ctx, rng, degrees, space=space)
        if f.is_zero() or g.is_zero():
            continue
        try:
            ok = commutes(ctx, f, g)
        except ClosureExceedsWindow:
            continue
        if not ok:
            raise InternalInvariantViolation('two commutant elements do not commute',
                                             {'f': f.to_json(), 'g': g.to_json()})
        pairs += 1
    return {'associativity_triples': assoc, 'commutant_pairs_commuting': pairs}


def _summary_system(report) -> str:
    rows = report.get('commutant')
    mx = report.get('maximality')
    parts = []
    commutative = bool(rows) and all(r['dim'] == report['algebra']['dim'] for r in rows)
    if commutative:
        parts.append('crossed product commutative within the window')
    if mx is not None:
        if mx['maximal_abelian']:
            text = f'maximal abelian within window {report["window"]}'
            if 'zeta_not_root_of_unity_up_to' in mx:
                text += ('; zeta certified non-root-of-unity to '
                         f'n={mx["zeta_not_root_of_unity_up_to"]}')
        else:
            text = 'A not maximal abelian' if commutative else 'not maximal abelian'
            if 'failing_degree' in mx and not commutative:
                text += f' (failing degree {mx["failing_degree"]})'
        parts.append(text)
    if rows and not commutative:
        pattern = _nonzero_pattern(rows)
        if pattern:
            parts.append(f'commutant nonzero off degree 0 {pattern}')
    return '; '.join(parts)


def run_system(sc: Scenario, window: int | None, oracle_only: bool, seed: int) -> dict:
    rotation = sc.raw['system']['type'] == 'rotation'
    w = window if window is not None else sc.window
    ctx = build_context(sc, w if rotation else None)
    if w is None:
        w = ctx.system.window if rotation else ctx.system.order + 2
    rng = random.Random(seed)
    report = {'version': REPORT_VERSION, 'tool': f'crossalg {__version__}', 'scenario': sc.name,
              'kind': 'system', 'window': w, 'oracle_only': oracle_only, 'seed': seed,
              'system': _system_section(ctx), 'algebra': _algebra_section(ctx)}
    if sc.description:
        report['description'] = sc.description
    todo = sc.analysis
    if 'sep' in todo:
        report['sep'] = _sep_section(ctx, min(w, ctx.system.order or w) or 1)
    commutant_rows = None
    if 'commutant' in todo or 'maximality' in todo:
        commutant_rows = _degree_table(ctx, w, 'commutant', commutant_degree,
                                       commutant_degree_oracle, oracle_only)
        if 'commutant' in todo:
            report['commutant'] = commutant_rows
    if 'center' in todo:
        rows = _degree_table(ctx, w, 'center', center_degree, center_degree_oracle, oracle_only)
        for r in rows:
            n = r['degree']
            if not span_contains(commutant_degree_oracle(ctx, n), center_degree_oracle(ctx, n),
                                 ctx.system.dim):
                raise InternalInvariantViolation('center not contained in commutant',
                                                 {'degree': n})
        report['center'] = rows
    if 'maximality' in todo:
        report['maximality'] = _maximality_section(ctx, commutant_rows, oracle_only)
    if 'gelfand' in todo:
        report['gelfand'] = (_gelfand_section(ctx, rng, w) if ctx.system.kind == 'finite'
                             else {'skipped': 'needs a finite system'})
    if 'generators' in todo:
        report['generators'] = _generators_section(ctx, w)
    if 'sampling' in todo:
        report['sampling'] = _sampling_section(ctx, rng, w)
    report['summary'] = _summary_system(report)
    return report


# --- group scenarios --------------------------------------------------------

def run_group(sc: Scenario, window: int | None, oracle_only: bool, seed: int) -> dict:
    m = build_dual_map(sc)
    N = len(m)
    w = window if window is not None else (sc.window if sc.window is not None else 4)
    rng = random.Random(seed)
    report = {'version': REPORT_VERSION, 'tool': f'crossalg {__version__}', 'scenario': sc.name,
              'kind': 'group', 'window': w, 'oracle_only': oracle_only, 'seed': seed,
              'group': {'cyclic': N}, 'dual_map': list(m)}
    if sc.description:
        report['description'] = sc.description
    if 'fourier' in sc.analysis:
        if N % 2 == 0 and m == disco_dual_map(N) and not oracle_only:
            body = disco_analog(N, w)
        else:
            body = dual_map_report(m, w, oracle_only)
        body.pop('N', None)
        body.pop('window', None)
        body.pop('dual_map', None)
        report['fourier'] = body
    if 'sampling' in sc.analysis:
        ok = DualAutomorphism(m).is_algebra_automorphism(rng, SAMPLES)
        if not ok:
            raise InternalInvariantViolation('induced map is not an algebra automorphism',
                                             {'dual_map': list(m)})
        report['sampling'] = {'automorphism_checks': SAMPLES, 'automorphism': True}
    f = report.get('fourier')
    if f is not None:
        parts = ['maximal abelian' if f['maximal_abelian'] else 'not maximal abelian']
        if 'even_support_all_nonzero_degrees' in f:
            parts.append('even-character support at every n != 0: '
                         + ('yes' if f['even_support_all_nonzero_degrees'] else 'no'))
            parts.append('support in evens or m^n-fixed odds: '
                         + ('yes' if f['support_in_evens_or_periodic_odds'] else 'no'))
        report['summary'] = '; '.join(parts)
    else:
        report['summary'] = ''
    return report


def run(sc: Scenario, window: int | None = None, oracle_only: bool = False, seed: int = 0) -> dict:
    if sc.kind == 'group':
        return run_group(sc, window, oracle_only, seed)
    return run_system(sc, window, oracle_only, seed)


# --- text rendering (from the JSON only) --------------------------------------

def _table(rows, cols) -> list[str]:
    widths = [max(len(str(c)), *(len(str(r.get(c, ''))) for r in rows)) for c in cols]
    out = ['  ' + '  '.join(str(c).ljust(w) for c, w in zip(cols, widths))]
    for r in rows:
        out.append('  ' + '  '.join(str(r.get(c, '')).ljust(w) for c, w in zip(cols, widths)))
    return out


def render_text(report: dict) -> str:
    lines = [f'scenario {report["scenario"]}  (report v{report["version"]}, window {report["window"]})']
    if 'description' in report:
        lines.append(f'  {report["description"]}')
    if 'system' in report:
        s = report['system']
        if s['type'] == 'finite':
            cyc = ' '.join('(' + ' '.join(c) + ')' for c in s['cycles'])
            lines.append(f'system: finite, |X| = {s["size"]}, cycles {cyc}, order {s["order"]}')
        else:
            cert = (f'root of unity of order {s["zeta_root_of_unity_order"]}'
                    if 'zeta_root_of_unity_order' in s
                    else f'not a root of unity up to n = {s["zeta_not_root_of_unity_up_to"]}')
            lines.append(f'system: rotation by zeta = {s["zeta"]} ({cert}), '
                         f'Laurent window |k| <= {s["laurent_window"]}')
        a = report['algebra']
        lines.append(f'algebra A: dim {a["dim"]}, unital {a["unital"]}')
        for b in a['basis']:
            lines.append(f'  {b}')
    if 'sep' in report:
        lines.append('Sep/Per:')
        lines += _table(report['sep']['table'], ['n', 'sep', 'per'])
        lines.append(f'  Per^inf = {report["sep"]["per_infinity"]}')
    for key, title in (('commutant', "commutant A'"), ('center', 'center')):
        if key in report:
            lines.append(f'{title} by degree:')
            rows = [dict(r, basis='; '.join(r['basis']) or '-') for r in report[key]]
            cols = ['degree', 'dim'] + (['oracle_dim', 'agrees'] if 'agrees' in report[key][0] else [])
            lines += _table(rows, cols + ['basis'])
    if 'maximality' in report:
        m = report['maximality']
        lines.append(f'maximal abelian: {m["maximal_abelian"]}  [{m["route"]}]')
        if 'failing_degree' in m:
            lines.append(f'  failing degree {m["failing_degree"]}, witness {m["witness"]}')
        for a in m.get('assumptions', []):
            lines.append(f'  assumption: {a}')
    if 'gelfand' in report:
        g = report['gelfand']
        if 'skipped' in g:
            lines.append(f'gelfand: skipped ({g["skipped"]})')
        else:
            cyc = ' '.join('(' + ' '.join(c) + ')' for c in g['induced_cycles'])
            lines.append(f'gelfand: |Delta(A)| = {g["characters"]}, induced cycles {cyc}')
            lines.append(f'  products preserved on {g["product_checks"]} pairs; commutant dims equal; '
                         f'maximal {g["maximal_abelian_source"]} / {g["maximal_abelian_image"]}')
    if 'generators' in report:
        g = report['generators']
        if 'skipped' in g:
            lines.append(f'generators: skipped ({g["skipped"]})')
        else:
            lines.append(f'generators of A\' ({g["count"]}), closure checked to |n| <= {g["closure_window"]}:')
            for e in g['generators']:
                lines.append(f'  {e["coefficient"]} delta^{e["degree"]}')
    if 'fourier' in report:
        f = report['fourier']
        lines.append(f'group algebra of Z_{report["group"]["cyclic"]}, dual map {report["dual_map"]}')
        lines.append(f'  induced on characters {f["induced_on_characters"]} '
                     f'(equals m: {f["induced_equals_dual_map"]}, '
                     f'equals m^-1: {f["induced_is_inverse_of_dual_map"]}), '
                     f'order {f["automorphism_order"]}')
        rows = [dict(r, fourier_support=' '.join(map(str, r['fourier_support'])) or '-')
                for r in f['degrees']]
        cols = ['degree', 'dim'] + (['theorem_equals_oracle'] if 'theorem_equals_oracle' in rows[0]
                                    else []) + ['fourier_support']
        if any('even_support' in r for r in rows):
            cols.append('even_support')
        lines += _table(rows, cols)
    if 'sampling' in report:
        lines.append('sampled checks: ' + ', '.join(f'{k} {v}' for k, v in report['sampling'].items()))
    if report.get('summary'):
        lines.append(f'=> {report["summary"]}')
    return '\n'.join(lines) + '\n'
