"""Systems of two-variable equations x_i + x_j = b over Z2.

Instances are stored 0-based; the text format is 1-based (DIMACS habit):

    p e2lin2 <n> <m>
    <i> <j> <b>          # one line per equation, 1-based variable indices

Lines starting with '#' are comments.  Best over all assignments is found by
exhaustive (bit-parallel) search, so instances are capped at 24 variables.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import ResourceLimitError, UsageError

# best approximation ratio ruled out for this problem family; metadata only
HARDNESS_RATIO = 11.0 / 12.0

BEST_ASSIGNMENT_CAP = 24

Equation = Tuple[int, int, int]  # (i, j, b) with i != j, b in {0, 1}


@dataclass(frozen=True)
class E2Lin2Instance:
    num_vars: int
    equations: Tuple[Equation, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise UsageError("instance needs at least one variable")
        if len(self.equations) < 1:
            raise UsageError("instance needs at least one equation")
        for i, j, b in self.equations:
            if not (0 <= i < self.num_vars and 0 <= j < self.num_vars):
                raise UsageError(f"equation ({i},{j},{b}) references a missing variable")
            if i == j:
                raise UsageError(f"equation ({i},{j},{b}) repeats a variable")
            if b not in (0, 1):
                raise UsageError(f"equation ({i},{j},{b}) has b outside {{0,1}}")

    @property
    def num_equations(self) -> int:
        return len(self.equations)

    def is_normalized(self) -> bool:
        """True when every variable appears in some equation."""
        return all(d > 0 for d in occurrence_counts(self))


def satisfied_count(inst: E2Lin2Instance, bits: Sequence[int]) -> int:
    """Number of equations the assignment satisfies."""
    if len(bits) != inst.num_vars:
        raise UsageError(f"assignment length {len(bits)} != num_vars {inst.num_vars}")
    return sum(1 for i, j, b in inst.equations if (bits[i] ^ bits[j]) == b)


def best_assignment(inst: E2Lin2Instance, *, max_vars: int = BEST_ASSIGNMENT_CAP,
                    force: bool = False) -> Tuple[int, Tuple[int, ...]]:
    """Exhaustive maximum of satisfied_count and one maximizer.

    Assignments are encoded as integers with variable 0 in the least
    significant bit; ties go to the lowest encoding.
    """
    n = inst.num_vars
    if n > max_vars and not force:
        raise ResourceLimitError(f"{n} variables exceeds cap {max_vars}")
    total = 1 << n
    best_val = -1
    best_enc = 0
    chunk = 1 << min(n, 20)
    for start in range(0, total, chunk):
        enc = np.arange(start, start + min(chunk, total - start), dtype=np.uint32)
        counts = np.zeros(enc.shape, dtype=np.uint16)
        for i, j, b in inst.equations:
            counts += (((enc >> np.uint32(i)) ^ (enc >> np.uint32(j))) & np.uint32(1)
                       ).astype(np.uint16) == b
        k = int(np.argmax(counts))
        if int(counts[k]) > best_val:
            best_val = int(counts[k])
            best_enc = start + k
    bits = tuple((best_enc >> i) & 1 for i in range(n))
    return best_val, bits


def occurrence_counts(inst: E2Lin2Instance) -> Tuple[int, ...]:
    """Per-variable equation counts d_i; their sum is 2m."""
    d = [0] * inst.num_vars
    for i, j, _ in inst.equations:
        d[i] += 1
        d[j] += 1
    return tuple(d)


def normalize(inst: E2Lin2Instance) -> Tuple[E2Lin2Instance, Tuple[int, ...]]:
    """Drop variables that appear in no equation and renumber.

    Returns the normalized instance and a map new_index -> old_index.
    """
    occ = occurrence_counts(inst)
    kept = tuple(v for v in range(inst.num_vars) if occ[v] > 0)
    if len(kept) == inst.num_vars:
        return inst, kept
    renum = {old: new for new, old in enumerate(kept)}
    eqs = tuple((renum[i], renum[j], b) for i, j, b in inst.equations)
    return E2Lin2Instance(len(kept), eqs), kept


# ---------------------------------------------------------------------------
# Text format


def format_instance(inst: E2Lin2Instance) -> str:
    lines = [f"p e2lin2 {inst.num_vars} {inst.num_equations}"]
    for i, j, b in inst.equations:
        lines.append(f"{i + 1} {j + 1} {b}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> E2Lin2Instance:
    header = None
    eqs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise UsageError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "e2lin2":
                raise UsageError(f"line {lineno}: bad header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise UsageError(f"line {lineno}: bad header {line!r}") from None
        else:
            if header is None:
                raise UsageError(f"line {lineno}: equation before header")
            if len(parts) != 3:
                raise UsageError(f"line {lineno}: bad equation {line!r}")
            try:
                i, j, b = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise UsageError(f"line {lineno}: bad equation {line!r}") from None
            n = header[0]
            if not (1 <= i <= n and 1 <= j <= n):
                raise UsageError(f"line {lineno}: variable index outside 1..{n}")
            if i == j:
                raise UsageError(f"line {lineno}: repeated variable")
            if b not in (0, 1):
                raise UsageError(f"line {lineno}: b must be 0 or 1")
            eqs.append((i - 1, j - 1, b))
    if header is None:
        raise UsageError("missing 'p e2lin2' header")
    if len(eqs) != header[1]:
        raise UsageError(f"header declares {header[1]} equations, found {len(eqs)}")
    return E2Lin2Instance(header[0], tuple(eqs))


def write_instance(inst: E2Lin2Instance, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_instance(inst))


def read_instance(path) -> E2Lin2Instance:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())


def random_instance(n: int, m: int, seed: int) -> E2Lin2Instance:
    """m uniform random equations on n variables, normalized.

    Endpoint pairs are uniform over i != j and right-hand sides over {0, 1};
    deterministic for a given seed.  Normalization may shrink the variable
    count when some variable happens not to appear.
    """
    if n < 2:
        raise UsageError("need n >= 2")
    if 2 * m < n:
        raise UsageError("need m >= n/2 so every variable can appear")
    rng = np.random.default_rng(seed)
    eqs = []
    for _ in range(m):
        i = int(rng.integers(n))
        j = int(rng.integers(n - 1))
        if j >= i:
            j += 1
        eqs.append((i, j, int(rng.integers(2))))
    inst, _ = normalize(E2Lin2Instance(n, tuple(eqs)))
    return inst


def minimum_best_count(inst: E2Lin2Instance) -> int:
    """Floor ceil(m/2) that the optimum can never go below."""
    return math.ceil(inst.num_equations / 2)
