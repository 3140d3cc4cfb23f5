'''
Weighted Delaunay

Options Support

The kernels, the flip driver and the sweep harness can all be tweaked through a small suite of options.

Herein we define a number of classes that act as enums and containers for options, and functions
for extracting them from a provided request (a mapping, as produced from parsed command line
arguments with vars(args), or any dict a caller builds).

The classes have long names and shortcut names provided as follows:

tolerance, tc          - relative tolerances for degeneracy tests, tie detection and domain clamping
flip_options, fo       - the flip (or seam switch) driver's limits
sampler_mode, sm       - how the sweep harness draws weight vectors
sweep_options, swo     - everything the sweep harness needs

And one aggregate is used:

run_config, rc         - which contains all of the above along with the paths one CLI run works on
'''

# Python imports
import inspect

from dataclasses import dataclass, field, replace
from typing import Optional

# A dictionary of default options. The name of the option and the default attribute.
defaults = {'sampler_mode': 'random',
            'eps': 1e-12,
            'tie': 1e-9,
            'clamp': 1e-9,
            'digits': 7,
            'cap': None,
            'samples': 100,
            'seed': 0,
            'workers': 1,
            'low': 0.0
            }


def default(obj):
    '''
    A shorthand method for getting the default value of one of the option classes
    or if an option is not a class of the option itself.
    '''
    if inspect.isclass(obj):
        return getattr(obj, defaults[obj.__name__])
    elif isinstance(obj, str):
        return defaults[obj]


@dataclass(frozen=True)
class tolerance():
    '''Tolerances threaded through every geometric predicate.

        eps     - relative tolerance below which a determinant, length or norm counts as degenerate
        tie     - relative tolerance, scaled by the hinge diameter, within which a margin is a tie
        clamp   - how far below 1 an arccosh argument may stray and still be read as roundoff
        digits  - relative digits kept of each length when hashing tessellations
    '''
    eps: float = defaults['eps']
    tie: float = defaults['tie']
    clamp: float = defaults['clamp']
    digits: int = defaults['digits']


# A shorthand for the tolerances
tc = tolerance

DEFAULT_TOLERANCE = tolerance()


def get_tolerance(request):
    '''
    Standard means of extracting tolerances from a request.

    "tol" overrides the tie tolerance, "eps" the degeneracy tolerance.
    '''
    TC = DEFAULT_TOLERANCE

    if request.get('tol') is not None:
        TC = replace(TC, tie=float(request['tol']))
    if request.get('eps') is not None:
        TC = replace(TC, eps=float(request['eps']))

    for name in ('tie', 'eps', 'clamp'):
        if not getattr(TC, name) > 0:
            raise ValueError(f"Tolerance {name} must be positive, got {getattr(TC, name)}")

    return TC


@dataclass(frozen=True)
class flip_options():
    '''Limits on the flip (and seam switch) driver.

        cap - the most flips one run may perform. None means 50·E² for E edges.
    '''
    cap: Optional[int] = defaults['cap']

    def limit(self, edges):
        return self.cap if self.cap is not None else 50 * edges * edges


# A shorthand for the flip options
fo = flip_options


def get_flip_options(request):
    '''
    Standard means of extracting flip options from a request.
    '''
    cap = request.get('flip_cap')
    if cap is not None and int(cap) <= 0:
        raise ValueError(f"Flip cap must be positive, got {cap}")
    return flip_options(cap=None if cap is None else int(cap))


class sampler_mode():
    '''How the sweep harness draws weight vectors inside the surrogate box.

        grid    - a regular grid, cell centres, walked in lexicographic order
        random  - uniform random draws from a seeded generator
    '''
    grid = 'grid'
    random = 'random'


# A shorthand for the sampler modes
sm = sampler_mode


def get_sampler_mode(request):
    '''
    Standard means of extracting a sampler mode from a request.
    '''
    SM = default(sampler_mode)

    if request.get('grid'):
        SM = sm.grid
    elif request.get('random'):
        SM = sm.random

    return SM


@dataclass(frozen=True)
class sweep_options():
    '''Everything the sweep harness needs.

        mode    - a sampler_mode
        count   - number of weight vectors drawn
        seed    - seed of the random generator (ignored on a grid)
        workers - process count, 1 runs in process
        low     - lower end of each sampling interval as a fraction of its upper end
    '''
    mode: str = default(sampler_mode)
    count: int = defaults['samples']
    seed: int = defaults['seed']
    workers: int = defaults['workers']
    low: float = defaults['low']
    flips: flip_options = field(default_factory=flip_options)

    def __post_init__(self):
        if self.mode not in (sm.grid, sm.random):
            raise ValueError(f"Unknown sampler mode: {self.mode}")
        if self.count <= 0:
            raise ValueError(f"Sample count must be positive, got {self.count}")
        if self.workers <= 0:
            raise ValueError(f"Worker count must be positive, got {self.workers}")
        if not 0 <= self.low < 1:
            raise ValueError(f"Low fraction must lie in [0, 1), got {self.low}")


# A shorthand for the sweep options
swo = sweep_options


def get_sweep_options(request):
    '''
    Standard means of extracting sweep options from a request. Only absent values fall back to the
    defaults, so an explicit zero is still rejected.
    '''
    def value(key, cast):
        v = request.get(key)
        return cast(defaults[key] if v is None else v)

    return sweep_options(mode=get_sampler_mode(request),
                         count=value('samples', int),
                         seed=value('seed', int),
                         workers=value('workers', int),
                         low=value('low', float),
                         flips=get_flip_options(request))


@dataclass(frozen=True)
class run_config():
    '''One run of the command line front end.'''
    subcommand: str
    input: str
    output: Optional[str] = None
    svg: Optional[str] = None
    tolerance: tolerance = DEFAULT_TOLERANCE
    flips: flip_options = field(default_factory=flip_options)
    sweep: sweep_options = field(default_factory=sweep_options)


# A shorthand for the run configuration
rc = run_config


def get_run_config(request):
    '''
    Standard means of building a run configuration from a request.
    '''
    return run_config(subcommand=request['command'],
                      input=request['input'],
                      output=request.get('output'),
                      svg=request.get('svg'),
                      tolerance=get_tolerance(request),
                      flips=get_flip_options(request),
                      sweep=get_sweep_options(request))
