"""Kernel text -> validated KernelSpec.

Hand-rolled tokenizer and recursive-descent parser over the grammar in
the README.  Section order is fixed (domain, props, init, receive?,
send?, reduce, apply); parse_kernel always finishes with validation so
no unchecked IR ever escapes.
"""

from __future__ import annotations

from ..errors import KernelSyntaxError
from ..values import Domain
from . import ast
from .validate import validate

KEYWORDS = {
    "kernel", "domain", "int", "float", "prop", "init",
    "receive", "send", "reduce", "apply", "if", "activate", "INF",
}
PUNCT = (
    "->", "<=", ">=", "==", "!=",
    "{", "}", "(", ")", "[", "]", ";", ",", "=", "?", ":",
    "+", "-", "*", "/", "%", "<", ">",
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind  # keyword/punct spelling, or ident | int | float | eof
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind!r}, {self.text!r}, {self.line}:{self.col})"


def _tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start_line, start_col = line, col
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_float = False
            if j < n and text[j] == ".":
                is_float = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lexeme = text[i:j]
            toks.append(Token("float" if is_float else "int", lexeme, start_line, start_col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            lexeme = text[i:j]
            kind = lexeme if lexeme in KEYWORDS else "ident"
            toks.append(Token(kind, lexeme, start_line, start_col))
            col += j - i
            i = j
            continue
        two = text[i : i + 2]
        if two in PUNCT:
            toks.append(Token(two, two, start_line, start_col))
            i += 2
            col += 2
            continue
        if c in PUNCT:
            toks.append(Token(c, c, start_line, start_col))
            i += 1
            col += 1
            continue
        raise KernelSyntaxError(line, col, {"a token"}, repr(c))
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def cur(self) -> Token:
        return self.toks[self.pos]

    def _fail(self, expected: set):
        t = self.cur
        found = t.text if t.kind != "eof" else "end of input"
        raise KernelSyntaxError(t.line, t.col, expected, found)

    def accept(self, kind) -> Token | None:
        if self.cur.kind == kind:
            t = self.cur
            self.pos += 1
            return t
        return None

    def expect(self, kind) -> Token:
        t = self.accept(kind)
        if t is None:
            self._fail({kind if kind not in ("ident", "int", "float") else f"<{kind}>"})
        return t

    # ---- grammar ----------------------------------------------------

    def kernel(self) -> dict:
        self.expect("kernel")
        name = self.expect("ident").text
        self.expect("{")
        self.expect("domain")
        if self.accept("int"):
            domain = Domain.INT
        elif self.accept("float"):
            domain = Domain.FLOAT
        else:
            self._fail({"int", "float"})
        self.expect(";")
        props = []
        while self.cur.kind == "prop":
            self.pos += 1
            pname = self.expect("ident").text
            self.expect("=")
            pexpr = self.expr()
            self.expect(";")
            props.append((pname, pexpr))
        self.expect("init")
        self.expect("(")
        init_param = self.expect("ident").text
        self.expect(")")
        init_body = self.block()
        receive = self.edge_section("receive") if self.cur.kind == "receive" else None
        send = self.edge_section("send") if self.cur.kind == "send" else None
        self.expect("reduce")
        self.expect("(")
        ra = self.expect("ident").text
        self.expect(",")
        rb = self.expect("ident").text
        self.expect(")")
        self.expect("->")
        rout = self.expect("ident").text
        rbody = self.block()
        self.expect("apply")
        self.expect("(")
        av = self.expect("ident").text
        self.expect(",")
        am = self.expect("ident").text
        self.expect(")")
        abody = self.block()
        self.expect("}")
        self.expect("eof")
        return {
            "name": name,
            "domain": domain,
            "props": tuple(props),
            "init": ast.InitSection(init_param, init_body),
            "receive": receive,
            "send": send,
            "reduce": (ra, rb, rout, rbody),
            "apply": ast.ApplySection((av, am), abody),
        }

    def edge_section(self, keyword: str):
        self.expect(keyword)
        self.expect("(")
        a = self.expect("ident").text
        self.expect(",")
        b = self.expect("ident").text
        self.expect(",")
        c = self.expect("ident").text
        self.expect(")")
        self.expect("->")
        out = self.expect("ident").text
        body = self.block()
        return ((a, b, c), out, body)

    def block(self) -> tuple:
        self.expect("{")
        stmts = []
        while self.cur.kind != "}":
            stmts.append(self.stmt())
        self.expect("}")
        return tuple(stmts)

    def stmt(self):
        if self.cur.kind == "if":
            self.pos += 1
            cond = self.expr()
            body = self.block()
            return ast.If(cond, body)
        if self.cur.kind == "activate":
            self.pos += 1
            self.expect("(")
            ident = self.expect("ident").text
            self.expect(")")
            self.expect(";")
            return ast.Activate(ident)
        name = self.expect("ident").text
        index = None
        if self.accept("["):
            index = self.expect("ident").text
            self.expect("]")
        self.expect("=")
        e = self.expr()
        self.expect(";")
        return ast.Assign(name, index, e)

    def expr(self):
        e = self.comparison()
        if self.accept("?"):
            then = self.expr()
            self.expect(":")
            orelse = self.expr()
            return ast.Cond(e, then, orelse)
        return e

    def comparison(self):
        e = self.additive()
        for op in ast.CMP_OPS:
            if self.cur.kind == op:
                self.pos += 1
                return ast.Cmp(op, e, self.additive())
        return e

    def additive(self):
        e = self.multiplicative()
        while self.cur.kind in ("+", "-"):
            op = self.cur.kind
            self.pos += 1
            e = ast.Bin(op, e, self.multiplicative())
        return e

    def multiplicative(self):
        e = self.unary()
        while self.cur.kind in ("*", "/", "%"):
            op = self.cur.kind
            self.pos += 1
            e = ast.Bin(op, e, self.unary())
        return e

    def unary(self):
        if self.accept("-"):
            return ast.Neg(self.unary())
        return self.primary()

    def primary(self):
        t = self.cur
        if t.kind == "int":
            self.pos += 1
            return ast.Num(int(t.text))
        if t.kind == "float":
            self.pos += 1
            return ast.Num(float(t.text))
        if t.kind == "INF":
            self.pos += 1
            return ast.Inf()
        if t.kind == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            self.pos += 1
            name = t.text
            if self.cur.kind == "(":
                if name == "sqare":  # alternate spelling, canonicalized
                    name = "square"
                if name not in ast.FUNCS:
                    raise KernelSyntaxError(
                        t.line, t.col, set(ast.FUNCS) | {"sqare"}, name
                    )
                self.pos += 1
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                return ast.Call(name, tuple(args))
            if self.accept("["):
                index = self.expect("ident").text
                self.expect("]")
                return ast.PropRead(name, index)
            return ast.Ident(name)
        self._fail({"<number>", "INF", "<ident>", "("})


def parse_kernel(text: str) -> ast.KernelSpec:
    """Parse and validate kernel source, returning the immutable IR."""
    raw = _Parser(text).kernel()
    return validate(raw)
