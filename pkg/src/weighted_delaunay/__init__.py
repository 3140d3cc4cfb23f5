'''
Weighted Delaunay

@author: Bernd Wechner
@status: Alpha - the flat and hyperbolic engines are complete and tested, the condition used on surfaces
         with geodesic boundary is inferred from the Voronoi duality rather than taken from a stated
         inequality and is flagged as such in every report.

Weighted Delaunay triangulations, and their duals the weighted Voronoi decompositions, computed
intrinsically on three kinds of surface:

    flat        - closed surfaces glued from Euclidean triangles, with cone points at the vertices
    hyperbolic  - closed surfaces glued from hyperbolic triangles
    boundary    - hyperbolic surfaces with geodesic boundary, cut into right-angled hexagons

Nothing is embedded. A surface is a Δ-complex with edge lengths (mesh.DeltaTriangulation), and every
computation happens in charts unfolded on demand. Vertices carry weights: squared radii on flat
surfaces, radii on hyperbolic ones and on each boundary geodesic.

The modules:

    euclid      - power centers, radical lines and signed heights in the plane
    hyperbolic  - the hyperboloid model: distances, geodesics, weighted bisectors, power centers and
                  the trirectangle and right-angled hexagon solvers
    mesh        - the surface itself, hinge unfolding, flips and weight validation
    delaunay    - edge certificates, the flip driver, tessellation hashes and the dual complex
    boundary    - truncated triangulations of bordered surfaces and their seam switches
    finiteness  - sweeps over weight space cataloguing the tessellations met
    torus       - flat tori and a brute-force periodic regular triangulation
    surfaces    - example surfaces, and the JSON copies shipped under data/
    render      - SVG drawings of small flat surfaces
    cli         - the weighted-delaunay command

And the supporting cast: options, errors, logs and serializers.
'''
__version__ = "0.1"
