"""Codes from point-hyperplane incidences of Desarguesian projective spaces.

Main entry points:

- gfq.field(p, h): GF(p^h) arithmetic
- projgeom.projective_space(p, h, n): PG(n, q) with canonical point order
- projgeom.desarguesian_spread(p, h, n): field-reduction spread machinery
- codes.Code: the p-ary code of points and hyperplanes, its dual and hull
- blocking: blocking-set construction, reduction, profiles, companions
- wsearch: budgeted weight enumeration and dual minimum-weight search
- cli: command line front end (`pgcodes`)
"""
from __future__ import annotations

__version__ = "0.1.0"
