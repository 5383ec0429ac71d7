"""
Streetflow
----------

Streetflow is an exact combinatorial engine for foliations of genus-2
surfaces that carry a transversal canonical basis, built from two flat tori
glued along a slit of measure m.

Features:
- Street decomposition of each torus from minimal lattice pairs
- The five-piece transition map of the slit and its six types
- Word semigroup, orbit coding and cylinder measures
- Fundamental group representatives and Dehn reduction
- Curve words on the punctured torus and positive automorphisms
- Building higher genus foliations from plane diagrams
- Transversal class tests for real hyperelliptic curves
- Ray-shooting oracle that checks the combinatorial model

Main CLI commands:
- streetflow streets / transition / words / pi1: the genus-2 engine
- streetflow curve / matrix: torus curves and positive automorphisms
- streetflow build / hyper: higher genus constructions
- streetflow simulate: compare against exact ray shooting

See the README.md for configuration, installation, and usage details.
"""

__version__ = "0.1.0"
