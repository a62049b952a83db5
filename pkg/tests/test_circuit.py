import pytest

from revgates.algebra import controlled, extend, fredkin, negation, wire_rotation, wire_swap
from revgates.circuit import (
    Circuit,
    FormatError,
    GateDef,
    GateInstance,
    invert,
    load,
    parse,
    save,
    serialize,
    simulate,
    to_perm,
)
from revgates.constructions import rotation00_circuit
from revgates.core import GatePerm, all_words

NEG = GateDef.from_perm("neg", negation())
FRED = GateDef.make_controlled("fred", (1,), wire_swap(2))


def test_simulate_basics():
    empty = Circuit(2, 3)
    assert simulate(empty, (1, 0, 1)) == (1, 0, 1)
    c = Circuit(2, 3, (GateInstance(NEG, (2,)),))
    assert simulate(c, (1, 0, 1)) == (1, 0, 0)
    assert to_perm(c) == extend(negation(), 3, (2,))
    with pytest.raises(ValueError):
        simulate(c, (1, 0))


def test_controlled_gate_definition():
    assert FRED.perm == fredkin()
    assert FRED.arity == 3
    c = Circuit(2, 4, (GateInstance(FRED, (3, 0, 1)),))
    assert to_perm(c) == extend(fredkin(), 4, (3, 0, 1))


def test_frozen_rotation_spot_inputs():
    c = rotation00_circuit()
    assert len(c) == 9
    # controls on wires 0 and 1
    assert simulate(c, (0, 0, 1, 0, 0)) == (0, 0, 0, 0, 1)
    assert simulate(c, (1, 0, 1, 0, 0)) == (1, 0, 1, 0, 0)
    target = controlled((0, 0), wire_rotation(2))
    assert all(simulate(c, w) == target(w) for w in all_words(2, 5))


def test_invert():
    c = Circuit(2, 4, (GateInstance(FRED, (3, 0, 1)), GateInstance(NEG, (2,)),
                       GateInstance(GateDef.from_perm("r", wire_rotation(2)), (1, 2, 3))))
    assert (to_perm(c).then(to_perm(invert(c)))).is_identity()


def test_wireperm_gate():
    g = GateDef("sw", 3, "wireperm", images=(1, 0))
    c = Circuit(3, 2, (GateInstance(g, (0, 1)),))
    assert simulate(c, (2, 0)) == (0, 2)


def test_serialize_format():
    c = Circuit(2, 3, (GateInstance(FRED, (0, 1, 2)), GateInstance(NEG, (2,))))
    text = serialize(c)
    assert text.splitlines() == [
        "revgate v1",
        "alphabet 2",
        "wires 3",
        "gate fred controlled 1 base 0 2 1 3",
        "gate neg table 1 0",
        "apply fred 0,1,2",
        "apply neg 2",
    ]
    assert parse(text) == c


def test_load_save(tmp_path):
    c = rotation00_circuit()
    path = tmp_path / "r.rg"
    save(c, path)
    assert load(path) == c


def test_comments_and_blank_lines():
    text = "# header comment\nrevgate v1\n\nalphabet 2  # binary\nwires 1\ngate n table 1 0\napply n 0\n"
    assert to_perm(parse(text)) == negation()


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("revgate v2\n", 1),
        ("revgate v1\nalphabet 2\nwires 2\napply x 0\n", 4),
        ("revgate v1\nalphabet 2\nwires 2\ngate n table 1 0\napply n 2\n", 5),
        ("revgate v1\nalphabet 2\nwires 2\ngate n table 1 0\ngate n table 0 1\n", 5),
        ("revgate v1\nalphabet 2\nwires 2\ngate n table 1 1\n", 4),
        ("revgate v1\nalphabet 2\nwires 2\ngate n table 1 0 2\n", 4),
        ("revgate v1\nalphabet 2\nwires 2\ngate n table 1 0\napply n 0,1\n", 5),
        ("revgate v1\nalphabet 2\nwires 2\nfrobnicate\n", 4),
        ("revgate v1\nalphabet 2\nalphabet 3\n", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(FormatError) as err:
        parse(text)
    assert err.value.lineno == line


def test_conflicting_gate_names():
    other = GateDef.from_perm("neg", GatePerm.identity(2, 1))
    c = Circuit(2, 2, (GateInstance(NEG, (0,)), GateInstance(other, (1,))))
    with pytest.raises(ValueError):
        serialize(c)


def test_instance_validation():
    with pytest.raises(ValueError):
        GateInstance(NEG, (0, 1))
    with pytest.raises(ValueError):
        GateInstance(FRED, (0, 0, 1))
    with pytest.raises(ValueError):
        Circuit(2, 2, (GateInstance(NEG, (2,)),))
