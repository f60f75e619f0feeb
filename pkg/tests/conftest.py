"""Fixtures for the dominant-vertex running example and the tautology
example used across the suite.

Universe {a, b, c}, one binary edge relation.  The tracked edges are
a->b (p), b->c (q), a->c (r), c->b (s) and b->a (t); every other edge is
fixed absent.
"""

import pytest

from semprov import parse_formula
from semprov.formats import load_structure, load_tracking
from semprov.formulas import Not


# no vertex dominates: for every x some y != x denies an edge x->y or
# answers with an edge y->x
NO_DOMINANT = "A x. ~(A y. (x = y | (E(x,y) & ~E(y,x))))"

# three edges present (a->b, b->c, b->a), the two tracked absences explicit
GRAPH_TRACKING = """\
universe a b c
rel E/2
track E(a,b) = p
track ~E(a,b) = 0
track E(b,c) = q
track ~E(b,c) = 0
track E(a,c) = 0
track ~E(a,c) = ~r
track E(c,b) = 0
track ~E(c,b) = ~s
track E(b,a) = t
track ~E(b,a) = 0
default + = 0
default - = 1
"""

# all five candidate edges open: token pair on each
OPEN_TRACKING = """\
universe a b c
rel E/2
track E(a,b) = p
track E(b,c) = q
track E(a,c) = r
track E(c,b) = s
track E(b,a) = t
default + = 0
default - = 1
"""

THREE_EDGE_STRUCTURE = """\
universe a b c
rel E/2
fact E(a,b)
fact E(b,c)
fact E(b,a)
"""

NO_EDGE_STRUCTURE = """\
universe a b c
rel E/2
"""

ALL_EDGE_STRUCTURE = """\
universe a b c
rel E/2
fact E(a,b)
fact E(b,c)
fact E(a,c)
fact E(c,b)
fact E(b,a)
"""

ONE_EDGE_STRUCTURE = """\
universe a b c
rel E/2
fact E(b,a)
"""

# token confidence scores for the three-edge graph's tracking
CONFIDENCE_SCORES = """\
score p = 0.9
score q = 0.9
score t = 0.2
score ~r = 0.6
score ~s = 0.6
default + = 0
default - = 1
"""

# the same interpretation keyed by literal, for direct evaluation
CONFIDENCE_LITERAL_SCORES = """\
score E(a,b) = 0.9
score E(b,c) = 0.9
score E(b,a) = 0.2
score ~E(a,b) = 0
score ~E(b,c) = 0
score ~E(b,a) = 0
score ~E(a,c) = 0.6
score ~E(c,b) = 0.6
default + = 0
default - = 1
"""

CLEARANCE_LEVELS = """\
score p = P
score q = P
score t = P
score ~r = T
score ~s = T
default + = 0
default - = P
"""

UNIFORM_THIRD_SCORES = """\
default + = 1/3
default - = 1/3
"""

# two-element universe, every edge tracked; the implication below is a
# tautology there
TWO_NODE_TRACKING = """\
universe a b
rel E/2
track E(a,b) = p
track E(b,a) = q
track E(a,a) = r
track E(b,b) = s
default + = 0
default - = 1
"""

TAUTOLOGY = "(E x. A y. E(x,y)) -> A y. E x. E(x,y)"


@pytest.fixture(scope="session")
def graph_tracking():
    return load_tracking(GRAPH_TRACKING)


@pytest.fixture(scope="session")
def open_tracking():
    return load_tracking(OPEN_TRACKING)


@pytest.fixture(scope="session")
def digraph_vocab(open_tracking):
    return open_tracking.interpretation.vocabulary


@pytest.fixture(scope="session")
def no_dominant(digraph_vocab):
    return parse_formula(NO_DOMINANT, digraph_vocab)


@pytest.fixture(scope="session")
def has_dominant(no_dominant):
    return Not(no_dominant)


@pytest.fixture(scope="session")
def three_edge_graph():
    return load_structure(THREE_EDGE_STRUCTURE)


@pytest.fixture(scope="session")
def no_edge_graph():
    return load_structure(NO_EDGE_STRUCTURE)


@pytest.fixture(scope="session")
def all_edge_graph():
    return load_structure(ALL_EDGE_STRUCTURE)


@pytest.fixture(scope="session")
def one_edge_graph():
    return load_structure(ONE_EDGE_STRUCTURE)


@pytest.fixture(scope="session")
def two_node_tracking():
    return load_tracking(TWO_NODE_TRACKING)


@pytest.fixture(scope="session")
def tautology(two_node_tracking):
    return parse_formula(TAUTOLOGY, two_node_tracking.interpretation.vocabulary)
