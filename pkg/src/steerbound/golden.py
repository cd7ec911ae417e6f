"""Published measurement-direction sets and their quoted LHS bounds.

Entries are transcribed as printed: closed forms are evaluated at full
precision, decimal entries keep the printed digits.  Decimal sets do not
have exactly unit-norm rows, so :func:`load` renormalizes and reports the
largest deviation it corrected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, sin, sqrt

import numpy as np

from .lhsbound import MeasurementSet

s2, s3, s5, s6, s10 = sqrt(2), sqrt(3), sqrt(5), sqrt(6), sqrt(10)


@dataclass(frozen=True)
class GoldenEntry:
    key: str
    table: str
    n: int
    directions: tuple[tuple[float, float, float], ...]
    quoted: float
    closed_form: float | None = None
    digits: int | None = None  # decimals printed for direction entries
    notes: tuple[str, ...] = field(default=())

    @property
    def tolerance(self) -> float:
        return 1e-9 if self.closed_form is not None and self.digits is None else 5e-4

    @property
    def reference(self) -> float:
        return self.closed_form if self.closed_form is not None else self.quoted


def _sjwp6():
    a = (5 - s5) / 10
    b = -(5 + s5) / 10
    c = sqrt((s5 + 5) / 10)
    d = sqrt((5 - s5) / 10)
    z = 1 / s5
    return (
        (0.0, 0.0, 1.0),
        (2 / s5, 0.0, z),
        (a, c, z),
        (b, d, z),
        (b, -d, z),
        (a, -c, z),
    )


def _sjwp10():
    a = (3 - s5) / 6
    b = (-s5 - 3) / 6
    c = sqrt((3 + s5) / 6)
    d = sqrt((3 - s5) / 6)
    return (
        (0.0, 0.0, 1.0),
        (2 / 3, 0.0, s5 / 3),
        (s5 / 3, 1 / s3, 1 / 3),
        (a, c, 1 / 3),
        (-1 / 3, 1 / s3, s5 / 3),
        (b, d, 1 / 3),
        (b, -d, 1 / 3),
        (-1 / 3, -1 / s3, s5 / 3),
        (a, -c, 1 / 3),
        (s5 / 3, -1 / s3, 1 / 3),
    )


TABLE1 = (
    GoldenEntry("table1-n2", "table1", 2, ((1, 0, 0), (0, 1, 0)), 0.7071, s2 / 2),
    GoldenEntry(
        "table1-n3", "table1", 3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), 0.5773, s3 / 3
    ),
    GoldenEntry(
        "table1-n4",
        "table1",
        4,
        (
            (s6 / 3, 0, s3 / 3),
            (-s6 / 3, 0, s3 / 3),
            (0, s6 / 3, s3 / 3),
            (0, -s6 / 3, s3 / 3),
        ),
        0.5773,
        s3 / 3,
    ),
    GoldenEntry("table1-n6", "table1", 6, _sjwp6(), 0.5393, (1 + s5) / 6),
    GoldenEntry("table1-n10", "table1", 10, _sjwp10(), 0.5236, (3 + s5) / 10),
)


_C5_SM = sqrt((9 + sqrt(33)) / 50)
_C5_MAIN = sqrt(2 * (9 + sqrt(33))) / 20

TABLE2 = (
    GoldenEntry(
        "table2-n2",
        "table2",
        2,
        ((0, -1 / s2, 1 / s2), (0, 1 / s2, 1 / s2)),
        0.7071,
        s2 / 2,
    ),
    GoldenEntry(
        "table2-n3",
        "table2",
        3,
        (
            (s6 / 3, 0, s3 / 3),
            (-s6 / 6, s2 / 2, s3 / 3),
            (-s6 / 6, -s2 / 2, s3 / 3),
        ),
        0.5773,
        s3 / 3,
    ),
    GoldenEntry(
        "table2-n4",
        "table2",
        4,
        (
            (2 / s5, 0, 1 / s5),
            (-1 / (2 * s5), s3 / 2, 1 / s5),
            (-7 / (4 * s5), -s3 / 4, 1 / s5),
            (1 / (4 * s5), -s3 / 4, 2 / s5),
        ),
        0.5590,
        s5 / 4,
    ),
    GoldenEntry(
        "table2-n5",
        "table2",
        5,
        (
            (-0.9297, 0, 0.3683),
            (0.1459, -0.9182, 0.3683),
            (0.6837, 0.6300, 0.3683),
            (-0.2460, 0.6300, 0.7366),
            (0.3461, -0.3418, 0.8737),
        ),
        0.5430,
        digits=4,
        notes=(
            f"main-text closed form sqrt(2(9+sqrt33))/20 = {_C5_MAIN:.6f}",
            f"supplement closed form sqrt((9+sqrt33)/50) = {_C5_SM:.6f}",
        ),
    ),
    GoldenEntry(
        "table2-n6",
        "table2",
        6,
        (
            (3 / s10, 0, 1 / s10),
            (-1 / (3 * s10), 2 * s2 / 3, 1 / s10),
            (-sqrt(2 / 5), -1 / s2, 1 / s10),
            (-7 / (3 * s10), 1 / (3 * s2), 2 / s10),
            (1 / s10, -1 / s2, 2 / s10),
            (sqrt(2 / 5) / 3, 1 / (3 * s2), 3 / s10),
        ),
        0.5270,
        s10 / 6,
    ),
    GoldenEntry(
        "table2-n7",
        "table2",
        7,
        (
            (0.8110, 0.5183, 0.2712),
            (-0.9625, 0, 0.2712),
            (-0.0256, -0.9423, 0.3337),
            (0.6536, -0.5082, 0.5609),
            (-0.5502, 0.5183, 0.6547),
            (0.1845, 0.7330, 0.6547),
            (-0.1108, -0.3192, 0.94126),
        ),
        0.5268,
        digits=4,
        notes=("supplement quotes C_7 ~ 0.562784 for the same configuration",),
    ),
    GoldenEntry(
        "table2-n8",
        "table2",
        8,
        (
            (0.9687, 0.0657, 0.2395),
            (-0.7471, -0.6200, 0.2395),
            (-0.2099, 0.9422, 0.2611),
            (-0.6502, 0.4930, 0.5782),
            (0.6228, -0.5271, 0.5782),
            (-0.0879, -0.8111, 0.5782),
            (0.4317, 0.4921, 0.7560),
            (-0.3280, -0.0348, 0.9446),
        ),
        0.5219,
        digits=4,
    ),
    GoldenEntry(
        "table2-n9",
        "table2",
        9,
        (
            (-0.9470, -0.2399, 0.2138),
            (0.9753, 0.0559, 0.2138),
            (0.2236, 0.9006, 0.3727),
            (-0.4840, 0.7917, 0.3727),
            (0.4918, -0.7506, 0.4412),
            (-0.2434, -0.8638, 0.4412),
            (0.5709, 0.1215, 0.8120),
            (-0.5810, -0.0558, 0.8120),
            (-0.0062, 0.0404, 0.9992),
        ),
        0.5198,
        digits=4,
    ),
    GoldenEntry(
        "table2-n10",
        "table2",
        10,
        (
            (0.9160, 0.3469, 0.2016),
            (-0.9680, 0.1498, 0.2016),
            (-0.3817, -0.8738, 0.3013),
            (0.5544, -0.7758, 0.30130),
            (0.5288, 0.6830, 0.5039),
            (-0.6588, 0.5587, 0.5039),
            (-0.0810, 0.7739, 0.6281),
            (0.0654, -0.6247, 0.7781),
            (-0.4556, -0.1679, 0.8742),
            (0.4805, -0.0700, 0.8742),
        ),
        0.5168,
        digits=4,
    ),
)


SM_TABLE = (
    GoldenEntry(
        "sm-n12",
        "sm",
        12,
        (
            (-0.8002, -0.5577, 0.22050),
            (-0.859, 0.4357, 0.2686),
            (-0.2008, 0.9394, 0.2779),
            (0.9529, 0.1212, 0.2779),
            (0.7407, -0.6117, 0.2779),
            (-0.1576, -0.9277, 0.3383),
            (0.5093, 0.7663, 0.3917),
            (0.2982, -0.5917, 0.7490),
            (-0.6580, 0.0164, 0.7529),
            (-0.1256, 0.5548, 0.8225),
            (0.5214, 0.1453, 0.8409),
            (-0.2212, -0.2903, 0.9310),
        ),
        0.5124,
        digits=4,
    ),
    GoldenEntry(
        "sm-n14",
        "sm",
        14,
        (
            (-0.4540, -0.8654, 0.2122),
            (0.0134, 0.3709, 0.9286),
            (0.2711, -0.9230, 0.2732),
            (-0.8330, -0.2467, 0.4953),
            (0.9506, 0.2742, 0.1449),
            (-0.9056, 0.4002, 0.1400),
            (-0.0360, 0.9049, 0.4240),
            (0.5655, 0.1908, 0.8024),
            (-0.1636, -0.6802, 0.7145),
            (0.7675, -0.4892, 0.4142),
            (0.6443, 0.6676, 0.3729),
            (-0.5659, 0.6873, 0.4553),
            (-0.5152, 0.0297, 0.8566),
            (0.2608, -0.3214, 0.9103),
        ),
        0.5103,
        digits=4,
    ),
    GoldenEntry(
        "sm-n16",
        "sm",
        16,
        (
            (-0.4330, -0.8834, 0.1790),
            (0.5947, 0.3580, 0.7198),
            (-0.9199, 0.3544, 0.1679),
            (0.6250, -0.6651, 0.4088),
            (-0.8531, -0.2469, 0.4596),
            (0.0640, 0.6012, 0.7965),
            (0.3379, 0.8924, 0.2991),
            (0.4152, -0.2369, 0.8784),
            (-0.6113, 0.4624, 0.6422),
            (-0.2007, -0.6999, 0.6854),
            (-0.4692, 0.8396, 0.2736),
            (-0.0471, 0.0997, 0.9939),
            (-0.4821, -0.2496, 0.8398),
            (0.8921, 0.4315, 0.1339),
            (0.1751, -0.9430, 0.2830),
            (0.9124, -0.1144, 0.3931),
        ),
        0.5096,
        digits=4,
    ),
    GoldenEntry(
        "sm-n18",
        "sm",
        18,
        (
            (-0.3998, 0.5864, 0.7044),
            (-0.1977, -0.2985, 0.9337),
            (-0.3298, 0.2137, 0.9195),
            (0.6925, -0.4245, 0.5833),
            (0.4484, 0.8649, 0.2256),
            (0.1220, 0.7780, 0.6163),
            (0.1244, -0.6324, 0.7646),
            (-0.6623, -0.4853, 0.5709),
            (0.9697, -0.2072, 0.1294),
            (-0.1528, -0.9243, 0.3498),
            (0.4199, -0.8794, 0.2245),
            (-0.8173, 0.4916, 0.3007),
            (-0.7830, -0.6046, 0.1457),
            (0.4634, 0.3948, 0.7933),
            (0.8772, 0.2919, 0.3811),
            (-0.3433, 0.9269, 0.1515),
            (-0.8849, -0.0570, 0.4623),
            (0.4534, -0.0348, 0.8907),
        ),
        0.5082,
        digits=4,
    ),
    GoldenEntry(
        "sm-n20",
        "sm",
        20,
        (
            (-0.4771, -0.3132, 0.8212),
            (-0.9316, 0.2859, 0.2241),
            (-0.8297, -0.0335, 0.5572),
            (0.7434, -0.0761, 0.6645),
            (-0.0856, -0.9817, 0.1703),
            (-0.4585, -0.7249, 0.5140),
            (0.8713, -0.4185, 0.2562),
            (-0.5864, 0.7777, 0.2262),
            (0.4133, 0.3046, 0.8581),
            (0.4841, -0.8210, 0.3025),
            (0.3804, -0.4887, 0.7852),
            (-0.0581, 0.0345, 0.9977),
            (0.0123, 0.9731, 0.2302),
            (-0.8229, -0.5475, 0.1518),
            (0.3358, 0.6873, 0.6441),
            (0.0713, -0.6120, 0.7876),
            (-0.3037, 0.6792, 0.6681),
            (0.9445, 0.2249, 0.2395),
            (-0.3920, 0.3529, 0.8496),
            (0.6895, 0.6968, 0.1978),
        ),
        0.5073,
        digits=4,
    ),
)


# Supplementary material: the same optimal sets N=7..10 printed with six
# decimals, and the exact N=5 set before rotation to the northern hemisphere.
_q = sqrt(33)
SUPPLEMENT_EXTRA = (
    GoldenEntry(
        "sm-n5-exact",
        "sm-extra",
        5,
        (
            (0, 0, 1),
            (1, 0, 0),
            ((-3 + _q) / 4, sqrt(-13 / 8 + 3 * _q / 8), 0),
            ((3 - _q) / 8, sqrt(1.5 * (1 + _q)) / 4, -0.5),
            ((3 - _q) / 8, sqrt(1.5 * (1 + _q)) / 4, 0.5),
        ),
        0.5430,
        _C5_SM,
    ),
    GoldenEntry(
        "sm-n7-6d",
        "sm-extra",
        7,
        (
            (0.811031, 0.518332, 0.271220),
            (-0.962517, 0, 0.271220),
            (-0.025624, -0.942341, 0.333670),
            (0.653592, -0.508171, 0.560874),
            (-0.550186, 0.518331, 0.654697),
            (0.184470, 0.733036, 0.654697),
            (-0.110765, -0.319187, 0.941196),
        ),
        0.5268,
        digits=6,
    ),
    GoldenEntry(
        "sm-n8-6d",
        "sm-extra",
        8,
        (
            (0.968666, 0.065740, 0.239509),
            (-0.747121, -0.620037, 0.239509),
            (-0.209859, 0.942222, 0.261106),
            (-0.650221, 0.492982, 0.578084),
            (0.622779, -0.527067, 0.578227),
            (-0.087923, -0.811125, 0.578227),
            (0.431679, 0.492111, 0.755963),
            (-0.328001, -0.034827, 0.944574),
        ),
        0.521867,
        digits=6,
    ),
    GoldenEntry(
        "sm-n9-6d",
        "sm-extra",
        9,
        (
            (-0.946974, -0.239896, 0.213751),
            (0.975285, 0.055948, 0.213751),
            (0.223587, 0.900606, 0.372717),
            (-0.484042, 0.791698, 0.372717),
            (0.49183, -0.750648, 0.441170),
            (-0.243361, -0.863797, 0.441170),
            (0.570929, 0.121485, 0.811962),
            (-0.581037, -0.055808, 0.811961),
            (-0.006217, 0.040411, 0.999164),
        ),
        0.519818,
        digits=6,
    ),
    GoldenEntry(
        "sm-n10-6d",
        "sm-extra",
        10,
        (
            (0.915980, 0.346916, 0.201568),
            (-0.967957, 0.149768, 0.201568),
            (-0.381747, -0.873784, 0.301280),
            (0.554376, -0.775821, 0.301280),
            (0.528849, 0.682951, 0.503881),
            (-0.658780, 0.558670, 0.503881),
            (-0.080984, 0.773887, 0.628125),
            (0.065374, -0.624714, 0.778112),
            (-0.455624, -0.167912, 0.874193),
            (0.480513, -0.069961, 0.874193),
        ),
        0.516808,
        digits=6,
    ),
)

ALL = TABLE1 + TABLE2 + SM_TABLE + SUPPLEMENT_EXTRA
BY_KEY = {e.key: e for e in ALL}
TABLES = {
    "table1": TABLE1,
    "table2": TABLE2,
    "sm-tables": SM_TABLE,
    "sm-extra": SUPPLEMENT_EXTRA,
}

# Best-known optimal bounds (Table II and the supplementary table).
OPTIMAL_RECORDS = {e.n: e.quoted for e in TABLE2 + SM_TABLE}
OPTIMAL_RECORDS[5] = _C5_SM
for _e in TABLE2:
    if _e.closed_form is not None:
        OPTIMAL_RECORDS[_e.n] = _e.closed_form


def raw_directions(key: str) -> np.ndarray:
    return np.array(BY_KEY[key].directions, dtype=float)


def load(key: str) -> tuple[MeasurementSet, float]:
    """Return the golden set for ``key`` and the renormalization delta.

    The delta is the largest ``| |b_j| - 1 |`` over the printed rows.
    """
    raw = raw_directions(key)
    norms = np.linalg.norm(raw, axis=1)
    delta = float(np.max(np.abs(norms - 1.0)))
    label = f"{BY_KEY[key].table}, N={BY_KEY[key].n}"
    return MeasurementSet(raw / norms[:, None], label=label), delta


# Angle parametrizations quoted alongside the N = 7 and N = 8 supplement sets.
SM_N7_ANGLES = {"phi4": 5.249546515851768, "phi2": -1.8564089024476422, "theta2": -4.280275193917692}
SM_N8_ANGLES = {"phi2": 2.2542981930847485, "phi5": 1.0982166105825837, "phi6": 1.4603674317905544}


def sm_n7_residuals() -> tuple[float, float, float]:
    """Left-hand sides of the three N = 7 stationarity relations at the quoted angles."""
    p4, p2, t2 = SM_N7_ANGLES["phi4"], SM_N7_ANGLES["phi2"], SM_N7_ANGLES["theta2"]
    a = 1 + s2
    return (
        cos(p4) + 2 * cos(p2) * sin(t2),
        (a * cos(p2) + cos(p2 - p4)) * sin(t2),
        2 * a * cos(t2)
        - 2 * cos(t2) ** 2
        + cos(p4) * (s2 + 2 * cos(p2) * sin(t2))
        + 2 * sin(t2) * (a * cos(p2) + (1 + sin(p4)) * sin(t2)),
    )


def sm_n7_formula() -> float:
    p4, p2, t2 = SM_N7_ANGLES["phi4"], SM_N7_ANGLES["phi2"], SM_N7_ANGLES["theta2"]
    return sqrt(4 + 2 * s2 + (2 * sin(t2) * sin(p2) + sin(p4)) ** 2) / 7


def sm_n8_residuals() -> tuple[float, float, float]:
    a, b, c = SM_N8_ANGLES["phi2"], SM_N8_ANGLES["phi5"], SM_N8_ANGLES["phi6"]
    return (
        cos(a) + cos(b) + 1.6 * cos(c),
        (1 + s2) * cos(a) + cos(a - b) + 1.6 * cos(a - c),
        (cos(a) - cos(b)) + (sin(a) + sin(b)) ** 2 + 1.6 * (sin(a) + sin(b)) * sin(c)
        - (66 + 30 * s2) / 25,
    )


def sm_n8_formula() -> float:
    a, b, c = SM_N8_ANGLES["phi2"], SM_N8_ANGLES["phi5"], SM_N8_ANGLES["phi6"]
    return sqrt((107 + 25 * s2 + 25 * cos(a - b) + 40 * (cos(a - c) + cos(b - c))) / 800)


def sm_n8_angle_set() -> MeasurementSet:
    """The N = 8 set in its angle form, before rotation to the northern hemisphere."""
    a, b, c = SM_N8_ANGLES["phi2"], SM_N8_ANGLES["phi5"], SM_N8_ANGLES["phi6"]
    d = [
        (-1 / s2, 0.0, 1 / s2),
        (cos(a), sin(a), 0.0),
        (0.0, 0.0, 1.0),
        (-1.0, 0.0, 0.0),
        (cos(b), sin(b), 0.0),
        (0.8 * cos(c), 0.8 * sin(c), -0.6),
        (0.8 * cos(c), 0.8 * sin(c), 0.6),
        (1 / s2, 0.0, 1 / s2),
    ]
    return MeasurementSet.from_vectors(d, "supplement N=8 angle form", normalize=True)
