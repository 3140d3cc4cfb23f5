'''
Weighted Delaunay

JSON serialization

Reports, meshes and dual complexes are written as canonical JSON: sorted keys, a fixed indent and
floats in Python's shortest round-trip form (never more than 17 significant digits). Identical
inputs produce byte-identical output.
'''
# Python imports
import dataclasses
import enum
import json

# Package imports
import numpy as np


class GeometryEncoder(json.JSONEncoder):
    '''
    A JSONEncoder that knows numpy values, dataclasses and enums.

    Dataclasses that define as_dict() are encoded with it, others field by field.
    '''

    def default(self, o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        elif isinstance(o, np.bool_):
            return bool(o)
        elif isinstance(o, np.integer):
            return int(o)
        elif isinstance(o, np.floating):
            return float(o)
        elif dataclasses.is_dataclass(o) and not isinstance(o, type):
            if hasattr(o, 'as_dict'):
                return o.as_dict()
            return {f.name: getattr(o, f.name) for f in dataclasses.fields(o)}
        elif isinstance(o, enum.Enum):
            return o.value
        elif isinstance(o, (set, frozenset)):
            return sorted(o)
        elif isinstance(o, tuple):
            return list(o)

        return super().default(o)


def _canonical(kwargs):
    kwargs.setdefault('cls', GeometryEncoder)
    kwargs.setdefault('sort_keys', True)
    kwargs.setdefault('indent', 2)
    return kwargs


def dumps(obj, **kwargs):
    '''
    Canonical json.dumps.
    '''
    return json.dumps(obj, **_canonical(kwargs))


def dump(obj, fp, **kwargs):
    '''
    Canonical json.dump, ending the file with a newline.
    '''
    json.dump(obj, fp, **_canonical(kwargs))
    fp.write("\n")


def loads(s, **kwargs):
    return json.loads(s, **kwargs)


def load(fp, **kwargs):
    return json.load(fp, **kwargs)
