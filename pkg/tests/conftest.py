"""Shared toy instances and independent oracles.

The oracles here deliberately re-derive results from first principles
(plain loops over the whole space) so the library implementations are
checked against something that cannot share their bugs.
"""

import itertools

import pytest

from slalomcover.conditions import NormedTree, ProductCondition, level, linear_tree
from slalomcover.extraction import FiniteName
from slalomcover.scales import BoundFn, validate_scale, validate_triple


# ---------------------------------------------------------------- oracles

def naive_member(values, sets):
    return all(v in s for v, s in zip(values, sets))


def naive_covers(family_sets, f_values):
    """Plain covering check: every tuple below f threads some slalom."""
    for branch in itertools.product(*(range(v) for v in f_values)):
        if not any(naive_member(branch, sets) for sets in family_sets):
            return False
    return True


def condition_c_oracle(T):
    """Direct enumeration over all u-choices, straight off the definition:
    a violation is a block i and g(l)-sized sets u_l with more than g'(i)
    joint preimages."""
    for i, w in enumerate(T.blocks):
        choices_per_level = [
            list(itertools.combinations(range(T.f(l)), min(T.g(l), T.f(l))))
            for l in w
        ]
        for u in itertools.product(*choices_per_level):
            count = sum(
                1 for n in range(T.fp(i))
                if all(T.maps[i][j][n] in set(u[j]) for j in range(len(w)))
            )
            if count > T.gp(i):
                return False, (i, u)
    return True, None


# ----------------------------------------------------------- toy scales

@pytest.fixture(scope="session")
def ext_scale():
    return validate_scale((2, 100), (40, 2000))


@pytest.fixture(scope="session")
def ext_triples(ext_scale):
    """(zeta, xi): a splitting coordinate's triple and a target triple."""
    zeta = validate_triple(BoundFn((32, 2000)), BoundFn((2, 100)),
                           BoundFn((2, 100)), ext_scale)
    xi = validate_triple(BoundFn((16, 2000)), BoundFn((10, 1000)),
                         BoundFn((2, 100)), ext_scale)
    return zeta, xi


def make_split_condition(zeta, width=16, depth=2, coords=("a", "b")):
    """Condition with one root split of the given width on the first
    coordinate; everything else linear."""
    nodes = {()}
    for v in range(width):
        node = (v,)
        nodes.add(node)
        for _ in range(depth - 1):
            node = node + (0,)
            nodes.add(node)
    trees = [(coords[0], NormedTree(depth, zeta, frozenset(nodes)))]
    for c in coords[1:]:
        trees.append((c, linear_tree(depth, zeta)))
    return ProductCondition(tuple(trees))


def make_name(p, value_fn, bound):
    """Label every full branch; value_fn(branch) -> value tuple."""
    labels = tuple((br, tuple(value_fn(br))) for br in level(p, p.depth).tuples)
    return FiniteName(p, labels, BoundFn(bound))


@pytest.fixture
def split_condition(ext_triples):
    zeta, _ = ext_triples
    return make_split_condition(zeta)


def random_extraction_instance(rng, zeta, xi):
    """A random single-split condition plus a random name and A-set.

    The split is wide enough for the small-level property (norm 3 needs
    width >= 16) and the name bound is wide enough that the hard extraction
    case really thins (more label values than the target allows)."""
    width = rng.randint(16, 32)
    n_coords = rng.randint(1, 3)
    coords = tuple(f"c{i}" for i in range(n_coords))
    split_at = rng.randrange(n_coords)
    trees = []
    for i, c in enumerate(coords):
        if i == split_at:
            nodes = {()}
            for v in range(width):
                nodes.add((v,))
                nodes.add((v, rng.randrange(zeta.f(1))))
            trees.append((c, NormedTree(2, zeta, frozenset(nodes))))
        else:
            vals = (rng.randrange(zeta.f(0)), rng.randrange(zeta.f(1)))
            trees.append((c, linear_tree(2, zeta, vals)))
    p = ProductCondition(tuple(trees))
    bound = (16, 100)
    labels = tuple(
        (br, (rng.randrange(bound[0]), rng.randrange(bound[1])))
        for br in level(p, 2).tuples)
    tau = FiniteName(p, labels, BoundFn(bound))
    A = frozenset(c for c in coords if rng.random() < 0.3)
    return p, tau, A


@pytest.fixture(scope="session")
def game_scale():
    return validate_scale((2, 7, 10 ** 6), (3, 2402, 10 ** 7))


@pytest.fixture(scope="session")
def game_triple(game_scale):
    return validate_triple(BoundFn((3, 2402, 10 ** 7)), BoundFn((2, 7, 10 ** 6)),
                           BoundFn((2, 7, 10 ** 6)), game_scale)


@pytest.fixture
def game_condition(game_triple):
    """Depth-2 condition with one 2401-wide split at level 1 (norm 3)."""
    nodes = {(), (0,)}
    nodes.update((0, j) for j in range(2401))
    tree_a = NormedTree(2, game_triple, frozenset(nodes))
    return ProductCondition((("a", tree_a), ("b", linear_tree(2, game_triple))))
