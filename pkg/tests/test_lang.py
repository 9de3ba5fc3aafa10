import pytest

from iterite.errors import (IndexOutOfRange, IoError, MissingAssignment, NonDiscreteEl,
                            ParseError, UnboundIdentifier)
from iterite.lang import Help, Let, Load, Query, Save, Session, command_text, parse, parse_expr
from iterite.terms import Bg, Coset, Empty, Reg, Sep1, Triv, Tuple
from iterite.universe import empty, eq, rank, tup

COMMANDS = [
    "let a = {vn 2, vn 3}_0",
    "eq {} {{}}_1",
    "idcount {{}, {}}_1 {{}, {}}_1",
    "mult {} fuzzy 3",
    "aut fuzzy 3",
    "el bg(3; (0 1), (0 1 2))",
    "canon pair(vn 1, union1({fuzzy 2, fuzzy 2}_1))",
    "rank vn 4",
    "pi0 exp(vn 2, vn 3)",
    "card sep0({vn 1, vn 2}_0; 1)",
    "el sep1(bg(2; (0 1)); 0 = reg)",
    "el sep1(bg(3; (0 1 2)); 0 = coset())",
    "el sep1({vn 1, vn 2}_0; 0 = triv 2, 1 = coset(()))",
    "canon replace0({vn 1, vn 2}_0; 0 = vn 3, 1 = x)",
    "canon replace1({vn 1}_0;)",
    "el bg(1;)",
    "el bg(4; (0 1)(2 3), (0 2)(1 3))",
    "canon union0({})",
    "save /tmp/some file.itr",
    "load relative/path.itr",
    "help",
]


@pytest.mark.parametrize("text", COMMANDS)
def test_round_trip(text):
    cmd = parse(text)
    assert command_text(cmd) == text
    assert parse(command_text(cmd)) == cmd


def test_command_kinds():
    assert isinstance(parse("let x = {}"), Let)
    assert isinstance(parse("aut {}"), Query)
    assert parse("save out.itr") == Save("out.itr")
    assert parse("load in.itr") == Load("in.itr")
    assert parse("help") == Help()
    assert parse("   ") is None
    assert parse("# a comment") is None


def test_whitespace_and_aliases():
    a = parse_expr("{ {} ,{}}_1")
    assert a == Tuple(1, (Empty(), Empty()))
    assert parse_expr("｛∅, ∅｝₁") == a
    assert parse_expr("{}") == Empty()
    assert parse_expr("∅") == Empty()
    assert parse_expr("{ }_0") == Empty()


def test_fiber_specs():
    e = parse_expr("sep1(x; 0 = triv 3, 2 = reg, 1 = coset((0 1), (2 3 4)))")
    assert isinstance(e, Sep1)
    assert e.specs == ((0, Triv(3)), (2, Reg()), (1, Coset((((0, 1),), ((2, 3, 4),)))))


def test_bg_cycles():
    assert parse_expr("bg(4; (0 1)(2 3), ())") == Bg(4, (((0, 1), (2, 3)), ()))


@pytest.mark.parametrize("text, line, col", [
    ("{,", 1, 1),
    ("aut {,", 1, 6),
    ("let a = {,", 1, 10),
    ("eq {} ", 1, 7),
    ("let = {}", 1, 5),
    ("let eq = {}", 1, 5),
    ("aut {{}}", 1, 9),
    ("aut {{}}_2", 1, 9),
    ("frobnicate {}", 1, 1),
    ("aut {} {}", 1, 8),
    ("save", 1, 5),
])
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)
    assert info.value.expected


def test_lexical_error_position():
    with pytest.raises(ParseError) as info:
        parse("aut @")
    assert (info.value.line, info.value.column) == (1, 5)


def test_parse_error_line_offset():
    with pytest.raises(ParseError) as info:
        parse("aut {", line=7)
    assert info.value.line == 7


class TestSession:
    def test_examples(self):
        s = Session()
        assert s.run("idcount {{},{}}_1 {{},{}}_1").data == 2
        s.run("let a = {vn 2, vn 3}_0")
        assert s.run("pi0 a").data == 2
        assert s.evaluate(parse_expr("union0({ {{}}_1 , {{}}_1 }_0)")) is tup(0, [empty()])
        assert rank(s.evaluate(parse_expr("vn 3"))) == 3

    def test_text_rendering(self):
        s = Session()
        assert s.run("card {{{},{}}_1}_0").text == "1/2"
        assert s.run("eq {} {}").text == "true"
        assert s.run("canon {{}}_0").text == "(():o1/h1/c[])"
        assert s.run("aut fuzzy 3").text == "6"

    def test_unbound(self):
        with pytest.raises(UnboundIdentifier) as info:
            Session().run("rank {x}_0")
        assert info.value.span == (1, 7)

    def test_errors_carry_spans(self):
        with pytest.raises(IndexOutOfRange) as info:
            Session().run("pi0 sep0(vn 2; 4)")
        assert info.value.span == (1, 5)
        with pytest.raises(NonDiscreteEl):
            Session().run("canon exp(bg(2; (0 1)), vn 1)")
        with pytest.raises(MissingAssignment):
            Session().run("canon replace0(vn 2; 0 = {})")

    def test_rebinding_uses_old_value(self):
        s = Session()
        s.run("let a = vn 1")
        s.run("let a = {a, a}_1")
        assert eq(s.env["a"].value, tup(1, [tup(0, [empty()])] * 2))
        assert s.dumps() == "let a = {vn 1, vn 1}_1\n"

    def test_history(self):
        s = Session()
        s.run("let a = {}")
        s.run("rank a")
        assert s.history == ["let a = {}", "rank a"]


class TestPersistence:
    BINDINGS = [
        "let a = {vn 2, vn 3}_0",
        "let b = sep1(bg(3; (0 1), (0 1 2)); 0 = coset((0 1)))",
        "let c = exp(vn 2, a)",
        "let d = replace1(a; 0 = b, 1 = c)",
        "let e = union1({d, fuzzy 3, pair(a, b)}_1)",
    ]

    def test_save_load_round_trip(self, tmp_path):
        s = Session()
        for line in self.BINDINGS:
            s.run(line)
        path = tmp_path / "session.itr"
        s.save(path)
        loaded = Session.load(path)
        assert list(loaded.env) == list(s.env)
        for name, binding in s.env.items():
            assert eq(loaded.env[name].value, binding.value)

    def test_saved_file_uses_surface_syntax_only(self, tmp_path):
        s = Session()
        for line in self.BINDINGS:
            s.run(line)
        path = tmp_path / "session.itr"
        s.save(path)
        lines = path.read_text().splitlines()
        assert len(lines) == 5
        for line in lines:
            assert isinstance(parse(line), Let)

    def test_empty_session(self, tmp_path):
        path = tmp_path / "empty.itr"
        Session().save(path)
        assert path.read_text() == ""
        assert Session.load(path).env == {}

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoError):
            Session.load(tmp_path / "nope.itr")

    def test_unwritable(self, tmp_path):
        with pytest.raises(IoError):
            Session().save(tmp_path / "no-such-dir" / "x.itr")

    def test_non_let_lines_rejected(self, tmp_path):
        path = tmp_path / "bad.itr"
        path.write_text("let a = {}\nrank a\n")
        with pytest.raises(ParseError) as info:
            Session.load(path)
        assert info.value.line == 2

    def test_load_command_merges(self, tmp_path):
        path = tmp_path / "s.itr"
        path.write_text("let a = vn 2\n")
        s = Session()
        s.run("let b = {}")
        out = s.run(f"load {path}")
        assert out.data == {"path": str(path), "bindings": 1}
        assert set(s.env) == {"a", "b"}
