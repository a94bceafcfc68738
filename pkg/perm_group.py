"""Moduł permutacji i grup permutacji.

Zawiera:
- Typ `Permutation` (bijekcja na {0..M−1}) i jego macierz permutacji.
- Typ `PermutationGroup` oraz domknięcie zbioru generatorów (BFS).
- Wyrocznię Aut(R) przeszukującą całe S_M (M ≤ 8).
- Projektor Reynoldsa na komutant grupy i test przynależności do komutanta.
- Podział par indeksów na orbity działania diagonalnego, największą grupę
  zachowującą ten podział oraz klasyfikator identyfikowalności.

Konwencja macierzy permutacji: wiersz i ma jedynkę w kolumnie σ(i).
Iloczyn `a * b` oznacza "najpierw a, potem b", dzięki czemu
perm_matrix(a * b) = perm_matrix(a) @ perm_matrix(b), a sprzężenie
(P_σ R P_σᵀ)[i, j] = R[σ(i), σ(j)] sprowadza się do indeksowania.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from config import CLOSURE_CAP, ORACLE_CHUNK, ORACLE_MAX_DEGREE, ZERO_TOL
from errors import DegreeCapError, GroupTooLargeError, NumericalError, ValidationError
from matrix_core import as_hermitian, as_square

logger = logging.getLogger(__name__)


# =============================================================================
# PERMUTACJE
# =============================================================================
@dataclass(frozen=True, order=True)
class Permutation:
    """Bijekcja i ↦ images[i] na zbiorze {0..M−1}."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))) or not imgs:
            raise ValidationError(f"Niepoprawna permutacja: {list(self.images)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> Permutation:
        # Bez walidacji: tylko dla obrazów, które już są permutacją
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        """Buduje permutację z listy cykli, np. [(0, 1, 2), (3, 4)]."""
        imgs = list(range(degree))
        seen = set()
        for cycle in cycles:
            cycle = [int(c) for c in cycle]
            for a in cycle:
                if a in seen or not 0 <= a < degree:
                    raise ValidationError(f"Niepoprawny cykl {tuple(cycle)} dla stopnia {degree}")
                seen.add(a)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                imgs[a] = b
        return cls(tuple(imgs))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValidationError("Złożenie permutacji różnych stopni")
        return Permutation._trusted(tuple(other.images[j] for j in self.images))

    def __pow__(self, k: int) -> Permutation:
        result = Permutation.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nietrywialne cykle, każdy zaczynający się od najmniejszego elementu."""
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return int(np.lcm.reduce([len(c) for c in self.cycles()] or [1]))

    def cycle_notation(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(i) for i in c) + ")" for c in cycles)

    def matrix(self) -> NDArray:
        return perm_matrix(self)

    def __str__(self):
        return " ".join(str(i) for i in self.images)


def perm_matrix(sigma: Permutation, dtype=float) -> NDArray:
    """Macierz 0/1 z jedynką w pozycji (i, σ(i)).

    Spełnia perm_matrix(a * b) = perm_matrix(a) @ perm_matrix(b).
    """
    m = sigma.degree
    out = np.zeros((m, m), dtype=dtype)
    out[np.arange(m), np.asarray(sigma.images)] = 1
    return out


def conjugate_by(r: NDArray, sigma: Permutation) -> NDArray:
    """Zwraca P_σ R P_σᵀ, czyli R[σ(i), σ(j)]."""
    idx = np.asarray(sigma.images)
    return r[np.ix_(idx, idx)]


def commutation_defect(sigma: Permutation, r: NDArray) -> float:
    """‖P_σR − RP_σ‖_F, liczone jako ‖P_σRP_σᵀ − R‖_F (P_σ ortogonalna)."""
    return float(np.linalg.norm(conjugate_by(r, sigma) - r))


def is_commuting(sigma: Permutation, r: NDArray, tol: float = ZERO_TOL) -> bool:
    """Czy ‖[P_σ, R]‖_F ≤ tol · ‖R‖_F (współdzielona tolerancja zera)."""
    return commutation_defect(sigma, r) <= tol * float(np.linalg.norm(r))


# =============================================================================
# GRUPY
# =============================================================================
@dataclass(frozen=True)
class PermutationGroup:
    """Skończona grupa permutacji z jawną listą elementów i generatorów."""

    degree: int
    elements: frozenset
    generators: tuple = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma) -> bool:
        return sigma in self.elements

    def __len__(self):
        return len(self.elements)

    def contains(self, sigma: Permutation) -> bool:
        return sigma in self.elements

    def issubgroup(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and self.elements <= other.elements

    def sorted_elements(self) -> list[Permutation]:
        return sorted(self.elements)

    def images_array(self) -> NDArray:
        """Tablica (|G|, M) obrazów elementów w porządku leksykograficznym."""
        return np.array([p.images for p in self.sorted_elements()], dtype=np.intp)

    def describe(self) -> str:
        gens = ", ".join(g.cycle_notation() for g in self.generators) or "brak"
        return f"grupa stopnia {self.degree}, rząd {self.order}, generatory: {gens}"


def trivial_group(degree: int) -> PermutationGroup:
    return PermutationGroup(degree, frozenset({Permutation.identity(degree)}), ())


def closure(degree: int, gens, cap: int = CLOSURE_CAP) -> PermutationGroup:
    """Najmniejsza podgrupa zawierająca `gens`, budowana przez BFS po iloczynach.

    Args:
        degree (int): Stopień M.
        gens: Lista generatorów (permutacji stopnia M).
        cap (int): Maksymalna dopuszczalna liczba elementów.

    Returns:
        PermutationGroup: Domknięcie z generatorami bez identyczności i duplikatów.

    Raises:
        ValidationError: Generator innego stopnia.
        GroupTooLargeError: Liczba elementów przekroczyła `cap`.
    """
    clean = []
    for g in gens:
        if g.degree != degree:
            raise ValidationError(f"Generator {g} ma stopień {g.degree}, oczekiwano {degree}")
        if not g.is_identity() and g not in clean:
            clean.append(g)

    identity = Permutation.identity(degree)
    elements = {identity}
    queue = deque([identity])
    gen_images = [g.images for g in clean]
    while queue:
        x = queue.popleft()
        for gi in gen_images:
            y = Permutation._trusted(tuple(gi[j] for j in x.images))
            if y not in elements:
                elements.add(y)
                if len(elements) > cap:
                    raise GroupTooLargeError(
                        f"Domknięcie przekroczyło limit {cap} elementów (stopień {degree})"
                    )
                queue.append(y)
    return PermutationGroup(degree, frozenset(elements), tuple(clean))


def generating_set(elements) -> list[Permutation]:
    """Zachłanny zbiór generatorów w porządku leksykograficznym elementów."""
    elements = sorted(elements)
    if not elements:
        return []
    degree = elements[0].degree
    gens = []
    current = {Permutation.identity(degree)}
    for el in elements:
        if el in current:
            continue
        gens.append(el)
        current = closure(degree, gens, cap=len(elements)).elements
    return gens


def group_from_elements(degree: int, elements) -> PermutationGroup:
    """Buduje grupę ze zbioru elementów i weryfikuje domkniętość.

    Raises:
        NumericalError: Gdy zbiór nie jest domknięty (np. przez tolerancję).
    """
    elements = frozenset(elements)
    try:
        gens = generating_set(elements)
        generated = closure(degree, gens, cap=max(len(elements), 1)).elements
    except GroupTooLargeError as err:
        raise NumericalError(f"Zbiór {len(elements)} permutacji nie jest domknięty") from err
    if generated != elements:
        raise NumericalError(
            f"Zbiór {len(elements)} permutacji nie jest domknięty (domknięcie ma {len(generated)})"
        )
    return PermutationGroup(degree, elements, tuple(gens))


def cyclic_group(degree: int) -> PermutationGroup:
    shift = Permutation(tuple((i + 1) % degree for i in range(degree)))
    return closure(degree, [shift])


def dihedral_group(degree: int) -> PermutationGroup:
    shift = Permutation(tuple((i + 1) % degree for i in range(degree)))
    flip = Permutation(tuple(degree - 1 - i for i in range(degree)))
    return closure(degree, [shift, flip])


def symmetric_group(degree: int) -> PermutationGroup:
    if degree > ORACLE_MAX_DEGREE:
        raise DegreeCapError(f"S_{degree} przekracza limit stopnia {ORACLE_MAX_DEGREE}")
    elements = frozenset(Permutation(p) for p in itertools.permutations(range(degree)))
    gens = []
    if degree > 1:
        gens.append(Permutation(tuple((i + 1) % degree for i in range(degree))))
        if degree > 2:
            gens.append(Permutation.from_cycles(degree, [(0, 1)]))
    return PermutationGroup(degree, elements, tuple(gens))


def _check_degree_cap(degree: int, cap: int):
    if degree > cap:
        raise DegreeCapError(f"Stopień {degree} przekracza limit wyczerpującego przeszukiwania ({cap})")


def _iter_sm_chunks(degree: int, chunk: int = ORACLE_CHUNK):
    it = itertools.permutations(range(degree))
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


# =============================================================================
# WYROCZNIA Aut(R)
# =============================================================================
def aut_bruteforce(r, tol: float = ZERO_TOL) -> PermutationGroup:
    """Wszystkie σ ∈ S_M z ‖P_σR − RP_σ‖_F ≤ tol·‖R‖_F.

    Przeszukuje całe S_M blokami (wektorowo w numpy); wynik jest
    weryfikowany jako grupa domknięta.

    Raises:
        DegreeCapError: Gdy M > 8.
    """
    r = as_hermitian(r, "r")
    degree = r.shape[0]
    _check_degree_cap(degree, ORACLE_MAX_DEGREE)
    bound = tol * float(np.linalg.norm(r))

    found = []
    for perms in _iter_sm_chunks(degree):
        conj = r[perms[:, :, None], perms[:, None, :]]
        defects = np.sqrt(np.sum(np.abs(conj - r) ** 2, axis=(1, 2)))
        for row in perms[defects <= bound]:
            found.append(Permutation._trusted(tuple(int(v) for v in row)))

    group = group_from_elements(degree, found)
    logger.debug("Wyrocznia Aut(R): %s", group.describe())
    return group


# =============================================================================
# PROJEKTOR REYNOLDSA I KOMUTANT
# =============================================================================
def reynolds_project(g: PermutationGroup, x) -> NDArray:
    """Średnia grupowa (1/|G|) Σ P_g X P_gᵀ, rzut ortogonalny na komutant."""
    x = as_square(x, "x")
    if x.shape[0] != g.degree:
        raise ValidationError(f"Macierz {x.shape} nie pasuje do grupy stopnia {g.degree}")
    perms = g.images_array()
    return x[perms[:, :, None], perms[:, None, :]].mean(axis=0)


def in_commutant(g: PermutationGroup, x, tol: float = ZERO_TOL) -> bool:
    """Czy X komutuje z P_g dla każdego generatora g (wystarczy sprawdzić generatory)."""
    x = as_square(x, "x")
    if x.shape[0] != g.degree:
        raise ValidationError(f"Macierz {x.shape} nie pasuje do grupy stopnia {g.degree}")
    bound = tol * max(1.0, float(np.linalg.norm(x)))
    gens = g.generators if g.generators else tuple(g.elements)
    return all(commutation_defect(s, x) <= bound for s in gens)


# =============================================================================
# ORBITY PAR I IDENTYFIKOWALNOŚĆ
# =============================================================================
@dataclass(frozen=True)
class OrbitPairPartition:
    """Podział par (i, j) na bloki; para (i, j) ma indeks i·M + j."""

    degree: int
    block_id: NDArray

    @property
    def n_blocks(self) -> int:
        return int(self.block_id.max()) + 1

    def block_of(self, i: int, j: int) -> int:
        return int(self.block_id[i * self.degree + j])

    def blocks(self) -> list[NDArray]:
        return [np.flatnonzero(self.block_id == b) for b in range(self.n_blocks)]

    def indicator(self, b: int) -> NDArray:
        """Macierz 0/1 bloku b (element bazy komutantu)."""
        return (self.block_id == b).reshape(self.degree, self.degree).astype(float)

    def merge_transpose(self) -> OrbitPairPartition:
        """Scala blok pary (i, j) z blokiem pary (j, i)."""
        m = self.degree
        parent = list(range(self.n_blocks))
        ids = self.block_id.reshape(m, m)
        for a, b in zip(ids.ravel(), ids.T.ravel()):
            _union(parent, int(a), int(b))
        return OrbitPairPartition(m, _canonical_labels(parent, self.block_id))


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def _union(parent, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)


def _canonical_labels(parent, items) -> NDArray:
    roots = [_find(parent, int(x)) for x in items]
    relabel = {}
    out = np.empty(len(roots), dtype=np.intp)
    for k, root in enumerate(roots):
        out[k] = relabel.setdefault(root, len(relabel))
    return out


def orbit_pairs(g: PermutationGroup) -> OrbitPairPartition:
    """Union-find par (i, j) ~ (σ(i), σ(j)) po wszystkich generatorach."""
    m = g.degree
    parent = list(range(m * m))
    gens = g.generators if g.generators else tuple(g.elements)
    for s in gens:
        for i in range(m):
            for j in range(m):
                _union(parent, i * m + j, s(i) * m + s(j))
    return OrbitPairPartition(m, _canonical_labels(parent, range(m * m)))


def max_orbit_preserving_group(p: OrbitPairPartition, cap_degree: int = ORACLE_MAX_DEGREE) -> PermutationGroup:
    """Wszystkie σ ∈ S_M, których działanie diagonalne zachowuje każdy blok p.

    Raises:
        DegreeCapError: Gdy M przekracza `cap_degree`.
    """
    m = p.degree
    _check_degree_cap(m, cap_degree)
    rows, cols = np.divmod(np.arange(m * m), m)
    bid = np.asarray(p.block_id)

    found = []
    for perms in _iter_sm_chunks(m):
        mapped = perms[:, rows] * m + perms[:, cols]
        keep = np.all(bid[mapped] == bid[None, :], axis=1)
        for row in perms[keep]:
            found.append(Permutation._trusted(tuple(int(v) for v in row)))
    return group_from_elements(m, found)


@dataclass(frozen=True)
class Identifiable:
    """G* jest jedyną grupą o swoim podziale par (przypadek generyczny)."""

    group: PermutationGroup
    merged_transpose: bool = False

    @property
    def is_identifiable(self) -> bool:
        return True


@dataclass(frozen=True)
class Ambiguous:
    """Istnieje ścisła nadgrupa H ⊋ G* zachowująca każdy blok par."""

    group: PermutationGroup
    hmax: PermutationGroup
    merged_transpose: bool = False

    @property
    def is_identifiable(self) -> bool:
        return False


def classify_identifiability(gstar: PermutationGroup, merge_transpose: bool = False):
    """Klasyfikuje G* jako identyfikowalną lub niejednoznaczną.

    Args:
        gstar (PermutationGroup): Grupa generatywna G*.
        merge_transpose (bool): Scal bloki (i, j) i (j, i); tryb właściwy dla
            rzeczywistych symetrycznych zespołów W.

    Returns:
        Identifiable | Ambiguous: Wynik wraz z największą grupą H.
    """
    _check_degree_cap(gstar.degree, ORACLE_MAX_DEGREE)
    partition = orbit_pairs(gstar)
    if merge_transpose:
        partition = partition.merge_transpose()
    hmax = max_orbit_preserving_group(partition)
    if hmax.elements == gstar.elements:
        return Identifiable(gstar, merge_transpose)
    logger.info(
        "⚠️ Grupa rzędu %d niejednoznaczna: nadgrupa rzędu %d zachowuje wszystkie orbity par",
        gstar.order, hmax.order,
    )
    return Ambiguous(gstar, hmax, merge_transpose)
