"""JSON scenarios: schema, validation, demo lookup and construction of the objects they describe."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .crossed import CrossedContext
from .dynamics import DEFAULT_ZETA, FiniteSystem, RotationSystem, multiplicative_closure
from .errors import NotBijective, SchemaError
from .exact_arith import GAUSSIAN, parse_scalar
from .fourier import AffineDualMap, check_permutation, piecewise_permutation

SYSTEM_ANALYSES = ('cycles', 'sep', 'commutant', 'center', 'maximality', 'gelfand',
                   'generators', 'sampling')
GROUP_ANALYSES = ('fourier', 'sampling')

_scalar = {'oneOf': [{'type': 'integer'}, {'type': 'string'}]}
_affine = {
    'type': 'object',
    'properties': {'a': {'type': 'integer'}, 'u': {'type': 'integer'}},
    'required': ['a', 'u'],
    'additionalProperties': False,
}

SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'properties': {
        'name': {'type': 'string'},
        'description': {'type': 'string'},
        'system': {
            'oneOf': [
                {
                    'type': 'object',
                    'properties': {
                        'type': {'const': 'finite'},
                        'size': {'type': 'integer', 'minimum': 1},
                        'sigma': {'type': 'array', 'items': {'type': 'integer', 'minimum': 0}},
                        'labels': {'type': 'array', 'items': {'type': 'string'}},
                    },
                    'required': ['type', 'size', 'sigma'],
                    'additionalProperties': False,
                },
                {
                    'type': 'object',
                    'properties': {
                        'type': {'const': 'rotation'},
                        'zeta': {'type': 'string'},
                        'window': {'type': 'integer', 'minimum': 1},
                        'root_bound': {'type': 'integer', 'minimum': 1},
                    },
                    'required': ['type'],
                    'additionalProperties': False,
                },
            ]
        },
        'generators': {
            'type': 'array',
            'minItems': 1,
            'items': {'oneOf': [
                {'type': 'array', 'items': _scalar},
                {'type': 'object', 'additionalProperties': _scalar},
            ]},
        },
        'group': {
            'type': 'object',
            'properties': {'cyclic': {'type': 'integer', 'minimum': 1}},
            'required': ['cyclic'],
            'additionalProperties': False,
        },
        'dual_map': {
            'oneOf': [
                {'type': 'object', 'properties': {'affine': _affine},
                 'required': ['affine'], 'additionalProperties': False},
                {'type': 'object',
                 'properties': {'piecewise': {'type': 'array', 'items': {
                     'type': 'array', 'minItems': 2, 'maxItems': 2,
                     'prefixItems': [{'type': 'array', 'items': {'type': 'integer'}}, _affine],
                 }}},
                 'required': ['piecewise'], 'additionalProperties': False},
                {'type': 'object',
                 'properties': {'permutation': {'type': 'array', 'items': {'type': 'integer'}}},
                 'required': ['permutation'], 'additionalProperties': False},
            ]
        },
        'analysis': {'type': 'array', 'items': {'enum': sorted(set(SYSTEM_ANALYSES + GROUP_ANALYSES))}},
        'window': {'type': 'integer', 'minimum': 0},
        'output': {'type': 'string'},
    },
    'oneOf': [
        {'required': ['system', 'generators'], 'not': {'anyOf': [{'required': ['group']},
                                                                 {'required': ['dual_map']}]}},
        {'required': ['group', 'dual_map'], 'not': {'anyOf': [{'required': ['system']},
                                                              {'required': ['generators']}]}},
    ],
}


@dataclass
class Scenario:
    name: str
    raw: dict
    kind: str  # 'system' or 'group'
    analysis: list = field(default_factory=list)
    window: int | None = None
    output: str | None = None
    description: str = ''


def demo_names() -> list[str]:
    root = resources.files('crossalg') / 'demos'
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith('.json'))


def load_demo(name: str) -> dict:
    path = resources.files('crossalg') / 'demos' / f'{name}.json'
    if not path.is_file():
        raise SchemaError(f'no demo named {name!r}; try one of {", ".join(demo_names())}')
    return json.loads(path.read_text())


def load(source: str) -> Scenario:
    """Read a scenario from a file path or a demo name."""
    p = Path(source)
    if p.is_file():
        try:
            raw = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f'{source}: invalid JSON ({exc})') from exc
        default_name = p.stem
    else:
        raw = load_demo(source)
        default_name = source
    return parse(raw, default_name)


def parse(raw: dict, default_name: str = 'scenario') -> Scenario:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = '/'.join(str(x) for x in exc.absolute_path) or '<root>'
        raise SchemaError(f'{where}: {exc.message}') from exc
    kind = 'system' if 'system' in raw else 'group'
    allowed = SYSTEM_ANALYSES if kind == 'system' else GROUP_ANALYSES
    analysis = list(raw.get('analysis') or default_analysis(raw))
    bad = [a for a in analysis if a not in allowed]
    if bad:
        raise SchemaError(f'analysis {bad} not available for {kind} scenarios')
    return Scenario(raw.get('name', default_name), raw, kind, analysis, raw.get('window'),
                    raw.get('output'), raw.get('description', ''))


def default_analysis(raw: dict) -> tuple:
    if 'group' in raw:
        return GROUP_ANALYSES
    if raw['system']['type'] == 'finite':
        return SYSTEM_ANALYSES
    return ('cycles', 'sep', 'commutant', 'center', 'maximality', 'sampling')


# --- construction -----------------------------------------------------------

def build_system(conf: dict, window: int | None = None):
    if conf['type'] == 'finite':
        sigma = conf['sigma']
        if len(sigma) != conf['size']:
            raise SchemaError(f'sigma has {len(sigma)} entries for size {conf["size"]}')
        try:
            return FiniteSystem(sigma, conf.get('labels'))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    zeta = parse_scalar(conf['zeta']) if 'zeta' in conf else DEFAULT_ZETA
    D = window if window is not None else conf.get('window', 8)
    try:
        return RotationSystem(zeta, D, conf.get('root_bound', 64))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _scalar_value(x):
    return GAUSSIAN.coerce(x) if isinstance(x, int) else parse_scalar(x)


def build_generator(system, gen) -> tuple:
    """A generator given as a full vector, or sparsely as {point or exponent: scalar}."""
    zero = system.field.zero
    if isinstance(gen, list):
        if len(gen) != system.dim:
            raise SchemaError(f'generator of length {len(gen)}; the system needs {system.dim}')
        return tuple(_scalar_value(x) for x in gen)
    v = [zero] * system.dim
    for key, val in gen.items():
        if system.kind == 'finite':
            if key in system.labels:
                idx = system.labels.index(key)
            else:
                try:
                    idx = int(key)
                except ValueError as exc:
                    raise SchemaError(f'unknown point {key!r}') from exc
            if not 0 <= idx < system.size:
                raise SchemaError(f'point {key!r} out of range')
        else:
            try:
                k = int(key)
            except ValueError as exc:
                raise SchemaError(f'exponent {key!r} is not an integer') from exc
            if abs(k) > system.window:
                raise SchemaError(f'z^{k} lies outside the window |k| <= {system.window}')
            idx = k + system.window
        v[idx] = _scalar_value(val)
    return tuple(v)


def build_context(sc: Scenario, window: int | None = None) -> CrossedContext:
    """Crossed product for a system scenario. For rotations ``window`` is the Laurent window."""
    system = build_system(sc.raw['system'], window)
    gens = [build_generator(system, g) for g in sc.raw['generators']]
    if not any(any(g) for g in gens):
        raise SchemaError('all generators are zero')
    A = multiplicative_closure(system, [g for g in gens if any(g)])
    return CrossedContext(A)


def build_dual_map(sc: Scenario) -> tuple[int, ...]:
    N = sc.raw['group']['cyclic']
    conf = sc.raw['dual_map']
    try:
        if 'affine' in conf:
            return AffineDualMap(conf['affine']['a'], conf['affine']['u']).permutation(N)
        if 'piecewise' in conf:
            return piecewise_permutation(
                N, [(subset, AffineDualMap(amap['a'], amap['u'])) for subset, amap in conf['piecewise']])
        perm = conf['permutation']
        if len(perm) != N:
            raise SchemaError(f'permutation of length {len(perm)} for Z_{N}')
        return check_permutation(perm)
    except NotBijective as exc:
        raise SchemaError(f'dual map: {exc}') from exc
