'''
Weighted Delaunay

Command line front end

    weighted-delaunay validate --input surface.json
    weighted-delaunay delaunay --input surface.json --output result.json
    weighted-delaunay voronoi  --input surface.json --svg cells.svg
    weighted-delaunay sweep    --input surface.json --samples 10000 --seed 1 --random
    weighted-delaunay render   --input surface.json --svg surface.svg

--input takes a JSON surface, an OBJ file (read as a flat surface) or the name of a shipped surface.
Surfaces without weights get zero weights, or unit radii when they have geodesic boundary.

Exit codes:

    0   done (validate: edge-admissible)
    1   validate: weights are in the disjoint circle surrogate domain
    2   weights rejected, or the input is not weighted Delaunay (voronoi)
    64  usage or input error
    70  flip limit, infeasible power center or unflippable edge
'''
# Python imports
import argparse
import logging
import os
import sys

# Package imports
import numpy as np

from . import __version__, serializers, surfaces
from .delaunay import canonical_tessellation, extract_dual, flip_to_delaunay
from .errors import (FlipLimitExceeded, GeometryError, NonConvexHinge, NonpositiveWeight, PowerCenterInfeasible,
                     UncertifiedMesh)
from .finiteness import sweep
from .logs import logger as log, use_logging
from .mesh import geometry, mesh_from_json, mesh_from_obj, validate_weights, weight_class, weight_violations
from .options import get_run_config
from .render import render_svg


class exit_code():
    '''Process exit codes.'''
    ok = 0
    surrogate = 1
    rejected = 2
    usage = 64
    internal = 70


CLASS_CODES = {weight_class.admissible: exit_code.ok,
               weight_class.surrogate: exit_code.surrogate,
               weight_class.rejected: exit_code.rejected}

INTERNAL = (FlipLimitExceeded, PowerCenterInfeasible, NonConvexHinge)


class parser(argparse.ArgumentParser):
    '''An ArgumentParser that exits with the usage code on bad arguments.'''

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(exit_code.usage, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--input', required=True, help="surface file (JSON or OBJ) or shipped surface name")
    common.add_argument('--output', help="write the JSON report here instead of stdout")
    common.add_argument('--tol', type=float, help="relative tie tolerance")
    common.add_argument('--eps', type=float, help="relative degeneracy tolerance")
    common.add_argument('--flip-cap', type=int, help="most flips (or seam switches) allowed")
    common.add_argument('--verbose', '-v', action='store_true', help="log every flip")

    top = parser(prog='weighted-delaunay', description="Weighted Delaunay triangulations and Voronoi "
                 "decompositions of flat, hyperbolic and bordered hyperbolic surfaces.")
    top.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    commands = top.add_subparsers(dest='command', required=True)

    commands.add_parser('validate', parents=[common], help="classify the weights against the edges")
    commands.add_parser('delaunay', parents=[common], help="flip to the weighted Delaunay triangulation")

    voronoi = commands.add_parser('voronoi', parents=[common], help="the dual weighted Voronoi complex")
    voronoi.add_argument('--svg', help="also draw it (flat surfaces)")

    sweeping = commands.add_parser('sweep', parents=[common], help="catalogue tessellations over weight space")
    sweeping.add_argument('--samples', type=int,
                          help="number of weight vectors, rounded down to a full grid with --grid")
    sweeping.add_argument('--seed', type=int, help="random seed")
    mode = sweeping.add_mutually_exclusive_group()
    mode.add_argument('--grid', action='store_true', help="sample on a grid")
    mode.add_argument('--random', action='store_true', help="sample at random (default)")
    sweeping.add_argument('--workers', type=int, help="processes to use")
    sweeping.add_argument('--low', type=float, help="lower end of the sampling box as a fraction of its upper end")
    sweeping.add_argument('--csv', help="write (sample, hash) rows here")

    render = commands.add_parser('render', parents=[common], help="draw the weighted Delaunay triangulation")
    render.add_argument('--svg', required=True, help="the SVG file to write")

    return top


def read_surface(name):
    '''
    :return: (mesh, weights), weights defaulted when the input has none
    '''
    if os.path.isfile(name):
        with open(name, 'r', encoding='utf-8') as fp:
            if name.lower().endswith('.obj'):
                mesh, weights = mesh_from_obj(fp.read(), os.path.basename(name)), None
            else:
                mesh, weights = mesh_from_json(serializers.load(fp))
    elif name in surfaces.shipped():
        mesh, weights = surfaces.load(name)
    else:
        raise FileNotFoundError(f"No such surface: {name}")

    if weights is None:
        fill = 1.0 if mesh.geometry == geometry.boundary else 0.0
        weights = np.full(mesh.vertex_count, fill)
    return mesh, weights


def write(report, path):
    if path:
        with open(path, 'w', encoding='utf-8') as fp:
            serializers.dump(report, fp)
    else:
        sys.stdout.write(serializers.dumps(report) + "\n")


def cmd_validate(config, mesh, weights):
    try:
        classification = validate_weights(mesh, weights)
        rejected, loose = weight_violations(mesh, weights)
    except NonpositiveWeight as e:
        log.error(str(e))
        write({'surface': mesh.name, 'classification': weight_class.rejected, 'reason': str(e)}, config.output)
        return exit_code.rejected

    write({'surface': mesh.name,
           'geometry': mesh.geometry,
           'classification': classification,
           'rejected_edges': rejected,
           'non_surrogate_edges': loose}, config.output)
    return CLASS_CODES[classification]


def _checked(mesh, weights):
    '''Refuses weights an edge rejects. All zero weights, classic Delaunay, are let through.'''
    if np.all(weights == 0) and mesh.geometry != geometry.boundary:
        return None
    try:
        if validate_weights(mesh, weights) == weight_class.rejected:
            return "Weights are rejected by the edge inequalities"
    except NonpositiveWeight as e:
        return str(e)
    return None


def cmd_delaunay(config, mesh, weights):
    problem = _checked(mesh, weights)
    if problem:
        log.error(problem)
        return exit_code.rejected

    report = flip_to_delaunay(mesh, weights, config.flips.cap, config.tolerance)
    write({'surface': mesh.to_json(weights),
           'report': report.as_dict(),
           'tessellation': canonical_tessellation(mesh, weights, config.tolerance, report.certificates)},
          config.output)
    return exit_code.ok


def cmd_voronoi(config, mesh, weights):
    try:
        dual = extract_dual(mesh, weights, config.tolerance)
    except UncertifiedMesh as e:
        log.error(f"{e}: run delaunay first (edges {[c.edge for c in e.violations]})")
        return exit_code.rejected

    write(dual.as_dict(), config.output)
    if config.svg and mesh.geometry == geometry.flat:
        render_svg(mesh, weights, config.svg, config.tolerance)
    elif config.svg:
        log.warning(f"Not drawing a {mesh.geometry} surface")
    return exit_code.ok


def cmd_sweep(config, mesh, weights, csv_path=None):
    report = sweep(mesh, config.sweep, config.tolerance)
    write(report.as_dict(), config.output)
    if csv_path:
        with open(csv_path, 'w', encoding='utf-8', newline='') as fp:
            report.to_csv(fp)
    return exit_code.ok


def cmd_render(config, mesh, weights):
    if mesh.geometry != geometry.flat:
        log.error(f"Only flat surfaces can be drawn, this one is {mesh.geometry}")
        return exit_code.usage
    problem = _checked(mesh, weights)
    if problem:
        log.error(problem)
        return exit_code.rejected
    flip_to_delaunay(mesh, weights, config.flips.cap, config.tolerance)
    render_svg(mesh, weights, config.svg, config.tolerance)
    return exit_code.ok


COMMANDS = {'validate': cmd_validate,
            'delaunay': cmd_delaunay,
            'voronoi': cmd_voronoi,
            'sweep': cmd_sweep,
            'render': cmd_render}


def main(argv=None):
    args = build_parser().parse_args(argv)
    use_logging(logging.DEBUG if args.verbose else logging.WARNING)
    request = vars(args)

    try:
        config = get_run_config(request)
        mesh, weights = read_surface(config.input)
    except (OSError, ValueError) as e:
        log.error(f"{args.input}: {e}")
        return exit_code.usage

    try:
        if config.subcommand == 'sweep':
            return cmd_sweep(config, mesh, weights, request.get('csv'))
        return COMMANDS[config.subcommand](config, mesh, weights)
    except (*INTERNAL, GeometryError) as e:
        log.error(f"{type(e).__name__}: {e}")
        return exit_code.internal
    except OSError as e:
        log.error(str(e))
        return exit_code.usage
