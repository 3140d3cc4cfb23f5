'''
Weighted Delaunay

Finiteness sweeps

Only finitely many weighted Delaunay tessellations occur on a surface as the weights vary. A sweep
draws weight vectors from a box in which the weight circles are disjoint along every edge, flips a
copy of the surface to each one's Delaunay triangulation and catalogues the distinct tessellation
hashes, one witness each. It also keeps the edge-length bound behind that finiteness honest: no
Delaunay edge is longer than twice the surface's diameter, here bounded from above by D̂.
'''
# Python imports
import csv
import itertools
import math

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

# Package imports
import numpy as np

from scipy.sparse.csgraph import shortest_path

from .delaunay import canonical_tessellation, flip_to_delaunay
from .errors import GeometryError
from .logs import logger as log
from .mesh import geometry, min_incident_lengths
from .options import DEFAULT_TOLERANCE, sampler_mode, sweep_options

# Fraction of the shortest incident edge a sampled radius may reach
BOX_FRACTION = 0.49


def diameter_bound(mesh):
    '''
    D̂, an upper bound for the diameter: the diameter of the edge graph under shortest paths plus twice
    the longest edge, since every point of a face is within its longest side of a vertex. With
    geodesic boundary the longest boundary is added as well.
    '''
    V = mesh.vertex_count
    graph = np.full((V, V), np.inf)
    for e in range(mesh.edge_count):
        a, b = mesh.edge_vertices(e)
        if a != b:
            graph[a, b] = graph[b, a] = min(graph[a, b], float(mesh.edge_lengths[e]))
    distances = shortest_path(graph, directed=False)
    finite = distances[np.isfinite(distances)]
    bound = (float(finite.max()) if finite.size else 0.0) + 2 * float(mesh.edge_lengths.max())

    if mesh.geometry == geometry.boundary:
        from .boundary import boundary_lengths
        bound += float(boundary_lengths(mesh).max())
    return bound


def edge_bound_check(mesh, result, bound=None, tol=DEFAULT_TOLERANCE):
    '''
    True when result is certified and none of its edges is longer than 2D̂. The bound depends on the
    surface only, not on the weights of the run.

    :param result: the FlipReport of a run on mesh
    :param bound: D̂ when already known, computed from mesh otherwise
    '''
    bound = diameter_bound(mesh) if bound is None else bound
    return result.certified and bool(np.all(np.asarray(result.edge_lengths) <= 2 * bound * (1 + tol.eps)))


def surrogate_box(mesh):
    '''
    Upper ends of the per vertex sampling intervals, weights whose circles stay disjoint along every
    edge: (0.49 × shortest incident edge)² for squared radii, 0.49 × shortest incident edge for radii.
    '''
    upper = BOX_FRACTION * min_incident_lengths(mesh)
    return upper ** 2 if mesh.geometry == geometry.flat else upper


def sample_weights(mesh, options):
    '''
    The weight vectors of a sweep, one row per sample.

    The grid sampler lays k levels per vertex with k^V at most the requested count and returns all k^V
    cells, so every vertex sees each of its k levels equally often. The random sampler returns exactly
    the requested count.
    '''
    upper = surrogate_box(mesh)
    lower = options.low * upper
    V = mesh.vertex_count

    if options.mode == sampler_mode.grid:
        k = max(1, math.floor(options.count ** (1 / V) + 1e-9))
        cells = itertools.product(range(k), repeat=V)
        fractions = (np.array(list(cells), dtype=float) + 0.5) / k
    else:
        rng = np.random.default_rng(options.seed)
        fractions = 1 - rng.random((options.count, V))

    return lower + (upper - lower) * fractions


@dataclass
class SampleResult:
    index: int
    weights: np.ndarray
    hash: Optional[str] = None
    flips: int = 0
    max_edge: float = 0.0
    bound_ok: bool = True
    error: Optional[str] = None
    message: Optional[str] = None


def evaluate(task):
    '''
    Flips a copy of the surface for one weight vector. Geometric failures are recorded, not raised.

    :param task: (index, mesh, weights, flip cap, tolerance, D̂)
    '''
    index, mesh, weights, cap, tol, bound = task
    work = mesh.copy()
    try:
        report = flip_to_delaunay(work, weights, cap, tol)
        digest = canonical_tessellation(work, weights, tol, report.certificates)
    except GeometryError as e:
        log.warning(f"sample {index}: {type(e).__name__}: {e}")
        return SampleResult(index, weights, error=type(e).__name__, message=str(e))

    return SampleResult(index, weights, digest, report.flips, float(report.edge_lengths.max()),
                        edge_bound_check(mesh, report, bound, tol))


@dataclass
class SweepReport:
    '''
    The catalogue of a sweep.

    types maps each distinct tessellation hash to the weights of its first witness, distinct records the
    number of distinct hashes after each sample.
    '''
    surface: str
    samples: int
    types: dict
    witnesses: dict
    distinct: list
    hashes: list
    max_edge_length: float
    diameter_bound: float
    flips: int = 0
    bound_ok: bool = True
    failures: list = field(default_factory=list)

    @property
    def distinct_count(self):
        return len(self.types)

    @property
    def edge_bound(self):
        return 2 * self.diameter_bound

    def as_dict(self):
        return {'surface': self.surface,
                'samples': self.samples,
                'distinct_count': self.distinct_count,
                'types': {h: {'sample': self.witnesses[h], 'weights': [float(x) for x in w]}
                          for h, w in self.types.items()},
                'max_edge_length': self.max_edge_length,
                'diameter_bound': self.diameter_bound,
                'edge_bound': self.edge_bound,
                'edge_bound_ok': self.bound_ok,
                'flips': self.flips,
                'failures': self.failures}

    def to_csv(self, fp):
        '''Writes one (sample, hash) row per sample, failed samples with an empty hash.'''
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(['sample', 'hash'])
        for index, digest in enumerate(self.hashes):
            writer.writerow([index, digest or ''])


def merge(mesh, results, bound=None):
    '''
    Folds sample results, in sample order, into a SweepReport.
    '''
    results = sorted(results, key=lambda r: r.index)
    types, witnesses, distinct, hashes, failures = {}, {}, [], [], []
    max_edge, flips, bound_ok = 0.0, 0, True

    for r in results:
        hashes.append(r.hash)
        if r.error:
            failures.append({'sample': r.index, 'error': r.error, 'message': r.message,
                             'weights': [float(x) for x in r.weights]})
        else:
            if r.hash not in types:
                types[r.hash] = np.asarray(r.weights, dtype=float)
                witnesses[r.hash] = r.index
            max_edge = max(max_edge, r.max_edge)
            flips += r.flips
            bound_ok = bound_ok and r.bound_ok
        distinct.append(len(types))

    return SweepReport(mesh.name or '', len(results), types, witnesses, distinct, hashes, max_edge,
                       diameter_bound(mesh) if bound is None else bound, flips, bound_ok, failures)


def sweep(mesh, options=None, tol=DEFAULT_TOLERANCE):
    '''
    Sweeps weight space on mesh, which is left untouched.

    :param options: sweep_options
    :return: SweepReport
    '''
    options = options or sweep_options()
    bound = diameter_bound(mesh)
    tasks = [(i, mesh, w, options.flips.cap, tol, bound) for i, w in enumerate(sample_weights(mesh, options))]

    if options.workers > 1:
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(evaluate, tasks, chunksize=max(1, len(tasks) // (4 * options.workers))))
    else:
        results = [evaluate(task) for task in tasks]

    report = merge(mesh, results, bound)
    log.info(f"{report.surface}: {report.distinct_count} types in {report.samples} samples, "
             f"{len(report.failures)} failures")
    return report


def replay(mesh, weights, cap=None, tol=DEFAULT_TOLERANCE):
    '''
    Re-runs one weight vector on a copy of mesh.

    :return: (tessellation hash, FlipReport, the flipped copy)
    '''
    work = mesh.copy()
    report = flip_to_delaunay(work, weights, cap, tol)
    return canonical_tessellation(work, weights, tol, report.certificates), report, work
