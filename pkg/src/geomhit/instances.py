"""Instance files and reproducible random instance generation.

Line-delimited JSON, streamable like the online model itself: one header
line, then one object record per line in arrival order.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import InstanceFormatError
from .geometry import AxisHypercube, FatObject, RegularKGon, fat_box, fat_l2_ball, fat_linf_ball

HEADER_TAG = "geomhit-instance"


@dataclass
class InstanceFile:
    variant: str  # "lattice" (universe Z^d) or "finite" (explicit points)
    d: int
    M: float
    object_class: str  # "hypercube" | "fat" | "kgon"
    objects: list
    k: int = None
    points: list = None

    def __post_init__(self):
        if self.variant not in ("lattice", "finite"):
            raise InstanceFormatError(f"unknown variant {self.variant!r}")
        if self.object_class not in ("hypercube", "fat", "kgon"):
            raise InstanceFormatError(f"unknown class {self.object_class!r}")
        if self.object_class == "kgon" and not self.k:
            raise InstanceFormatError("kgon instances must declare k")
        if self.variant == "finite":
            if not self.points:
                raise InstanceFormatError("finite variant requires points")
            pts = [tuple(p) for p in self.points]
            if len(set(pts)) != len(pts):
                raise InstanceFormatError("finite variant points must be distinct")
            self.points = pts

    @property
    def n_points(self):
        return len(self.points) if self.points else None


def _object_record(obj):
    if isinstance(obj, AxisHypercube):
        return {"type": "hypercube", "center": list(obj.center), "width": obj.width}
    if isinstance(obj, RegularKGon):
        return {"type": "kgon", "center": list(obj.center), "diameter": obj.diameter}
    if isinstance(obj, FatObject):
        rec = {"type": "fat", "kind": obj.label, "center": list(obj.center)}
        if obj.label == "linf_ball":
            rec["width"] = obj.params[0]
        elif obj.label == "l2_ball":
            rec["radius"] = obj.params[0]
        elif obj.label == "box":
            rec["half_extents"] = list(obj.params)
        else:
            raise InstanceFormatError(f"cannot serialize fat kind {obj.label!r}")
        return rec
    raise InstanceFormatError(f"cannot serialize {type(obj).__name__}")


def _object_from_record(rec, inst):
    t = rec.get("type")
    if t == "hypercube":
        return AxisHypercube(tuple(rec["center"]), float(rec["width"]), closed=True)
    if t == "kgon":
        return RegularKGon(inst["k"], tuple(rec["center"]), float(rec["diameter"]) / 2.0)
    if t == "fat":
        kind = rec.get("kind")
        if kind == "linf_ball":
            return fat_linf_ball(rec["center"], rec["width"])
        if kind == "l2_ball":
            return fat_l2_ball(rec["center"], rec["radius"])
        if kind == "box":
            obj = fat_box(rec["center"], rec["half_extents"])
            return obj
        raise InstanceFormatError(f"unknown fat kind {kind!r}")
    raise InstanceFormatError(f"unknown object type {t!r}")


def dumps_instance(inst):
    header = {
        "format": HEADER_TAG,
        "version": 1,
        "variant": inst.variant,
        "d": inst.d,
        "M": inst.M,
        "object_class": inst.object_class,
    }
    if inst.k is not None:
        header["k"] = inst.k
    if inst.points is not None:
        header["points"] = [list(p) for p in inst.points]
    lines = [json.dumps(header, sort_keys=True, separators=(",", ":"))]
    for obj in inst.objects:
        lines.append(json.dumps(_object_record(obj), sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def write_instance(inst, path):
    with open(path, "w") as fh:
        fh.write(dumps_instance(inst))


def loads_instance(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InstanceFormatError("empty instance file")
    header = json.loads(lines[0])
    if header.get("format") != HEADER_TAG:
        raise InstanceFormatError("missing instance header")
    meta = {
        "variant": header["variant"],
        "d": header["d"],
        "M": header["M"],
        "object_class": header["object_class"],
        "k": header.get("k"),
        "points": header.get("points"),
    }
    objects = [_object_from_record(json.loads(ln), header) for ln in lines[1:]]
    inst = InstanceFile(
        variant=meta["variant"],
        d=meta["d"],
        M=meta["M"],
        object_class=meta["object_class"],
        objects=objects,
        k=meta["k"],
        points=meta["points"],
    )
    _validate(inst)
    return inst


def read_instance(path):
    with open(path) as fh:
        return loads_instance(fh.read())


def _size_of(obj):
    if isinstance(obj, AxisHypercube):
        return obj.width
    if isinstance(obj, RegularKGon):
        return obj.diameter
    return obj.width


def _validate(inst):
    for i, obj in enumerate(inst.objects):
        s = _size_of(obj)
        if not (1.0 - 1e-9 <= s <= inst.M + 1e-9):
            raise InstanceFormatError(f"object {i} size {s} outside [1, {inst.M}]")
        expected = {
            "hypercube": AxisHypercube,
            "kgon": RegularKGon,
            "fat": FatObject,
        }[inst.object_class]
        if not isinstance(obj, expected):
            raise InstanceFormatError(f"object {i} does not match declared class")


@dataclass
class GeneratorSpec:
    object_class: str
    d: int
    M: float
    count: int
    low: float = 0.0
    high: float = 20.0
    k: int = None
    n_points: int = 0
    fat_kinds: tuple = ("linf_ball",)
    size_mode: str = "loguniform"  # or "fixed"
    fixed_size: float = None

    def __post_init__(self):
        if self.count < 0 or self.M < 1:
            raise InstanceFormatError("invalid generator spec")
        if self.object_class == "kgon" and not self.k:
            raise InstanceFormatError("kgon spec requires k")
        if self.size_mode == "fixed" and not self.fixed_size:
            raise InstanceFormatError("fixed size mode requires fixed_size")


def _draw_size(spec, rng):
    if spec.size_mode == "fixed":
        return float(spec.fixed_size)
    u = float(rng.random())
    return math.exp(u * math.log(spec.M)) if spec.M > 1 else 1.0


def generate_random_instance(spec, rng):
    """Reproducible instance: identical generator state gives identical files."""
    points = None
    variant = "lattice"
    if spec.object_class == "kgon":
        variant = "finite"
        pts = set()
        while len(pts) < spec.n_points:
            pts.add(
                (
                    round(spec.low + (spec.high - spec.low) * float(rng.random()), 12),
                    round(spec.low + (spec.high - spec.low) * float(rng.random()), 12),
                )
            )
        points = sorted(pts)
    objects = []
    for _ in range(spec.count):
        center = tuple(
            spec.low + (spec.high - spec.low) * float(rng.random()) for _ in range(spec.d)
        )
        size = _draw_size(spec, rng)
        if spec.object_class == "hypercube":
            objects.append(AxisHypercube(center, size, closed=True))
        elif spec.object_class == "kgon":
            objects.append(RegularKGon(spec.k, center, size / 2.0))
        else:
            kind = spec.fat_kinds[int(rng.integers(0, len(spec.fat_kinds)))]
            if kind == "linf_ball":
                objects.append(fat_linf_ball(center, size))
            elif kind == "l2_ball":
                objects.append(fat_l2_ball(center, size * math.sqrt(spec.d)))
            elif kind == "box":
                aspect = 1.0 + float(rng.random())
                half = [size * (1.0 + (aspect - 1.0) * float(rng.random())) for _ in range(spec.d)]
                half[int(rng.integers(0, spec.d))] = size
                objects.append(fat_box(center, half))
            else:
                raise InstanceFormatError(f"unknown fat kind {kind!r}")
    inst = InstanceFile(
        variant=variant,
        d=spec.d,
        M=spec.M,
        object_class=spec.object_class,
        objects=objects,
        k=spec.k,
        points=points,
    )
    _validate(inst)
    return inst
