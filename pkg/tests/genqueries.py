"""Seeded random query-AST generator for round-trip and idempotence tests.

Generates grammatically valid trees only; they need not type-check
(round-tripping is purely syntactic).
"""

import random

from vnnlib2.syntax import (
    And,
    Assertion,
    Cmp,
    CmpOp,
    Const,
    Equiv,
    EquivKind,
    HiddenDecl,
    IoDecl,
    NaryAdd,
    NaryMul,
    NarySub,
    Neg,
    NetworkDecl,
    Or,
    Query,
    Var,
)

ELEMENT_TYPES = ["float16", "float32", "float64", "int16", "int32", "int64", "real"]


class QueryGen:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.counter = 0

    def fresh_name(self, prefix: str) -> str:
        self.counter += 1
        name = f"{prefix}{self.counter}"
        if self.rng.random() < 0.1:
            name += "-x"  # interior hyphens are legal in names
        return name

    def literal(self) -> str:
        rng = self.rng
        text = str(rng.randint(0, 10 ** rng.randint(1, 6)))
        if rng.random() < 0.1:
            text = "0" + text  # leading zeros survive round-trips verbatim
        if rng.random() < 0.6:
            text += "." + str(rng.randint(0, 999)).zfill(rng.randint(1, 3))
        if rng.random() < 0.4:
            text = "-" + text
        return text

    def shape(self) -> tuple[int, ...]:
        rng = self.rng
        if rng.random() < 0.1:
            return ()
        return tuple(rng.randint(0, 9) for _ in range(rng.randint(1, 4)))

    def var(self, names) -> Var:
        rng = self.rng
        name = rng.choice(names)
        roll = rng.random()
        if roll < 0.15:
            indices = None
        elif roll < 0.25:
            indices = ()
        else:
            indices = tuple(rng.randint(0, 9) for _ in range(rng.randint(1, 3)))
        return Var(name=name, indices=indices)

    def arith(self, names, depth: int):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.4:
            if rng.random() < 0.5:
                return Const(text=self.literal())
            return self.var(names)
        kind = rng.randrange(4)
        if kind == 0:
            return Neg(operand=self.arith(names, depth - 1))
        items = tuple(
            self.arith(names, depth - 1) for _ in range(rng.randint(2, 4))
        )
        return (NaryAdd, NaryMul, NarySub)[kind - 1](items=items)

    def bool_expr(self, names, depth: int):
        rng = self.rng
        if depth <= 0 or rng.random() < 0.5:
            return Cmp(
                op=rng.choice(list(CmpOp)),
                lhs=self.arith(names, depth),
                rhs=self.arith(names, depth),
            )
        node = And if rng.random() < 0.5 else Or
        items = tuple(
            self.bool_expr(names, depth - 1) for _ in range(rng.randint(2, 3))
        )
        return node(items=items)

    def network(self, previous: list[str]) -> NetworkDecl:
        rng = self.rng
        equiv = None
        if previous and rng.random() < 0.3:
            equiv = Equiv(
                kind=rng.choice(list(EquivKind)), target=rng.choice(previous)
            )
        inputs = tuple(
            IoDecl(self.fresh_name("v"), rng.choice(ELEMENT_TYPES), self.shape())
            for _ in range(rng.randint(1, 3))
        )
        hidden = tuple(
            HiddenDecl(
                self.fresh_name("v"),
                rng.choice(ELEMENT_TYPES),
                self.shape(),
                rng.choice(["hidden", "enc/out", "layer 3", "N0.relu"]),
            )
            for _ in range(rng.randint(0, 2))
        )
        outputs = tuple(
            IoDecl(self.fresh_name("v"), rng.choice(ELEMENT_TYPES), self.shape())
            for _ in range(rng.randint(1, 2))
        )
        return NetworkDecl(
            name=self.fresh_name("net"),
            equiv=equiv,
            inputs=inputs,
            hidden=hidden,
            outputs=outputs,
        )

    def query(self) -> Query:
        rng = self.rng
        networks = []
        names: list[str] = []
        for _ in range(rng.randint(1, 3)):
            net = self.network(names)
            names.append(net.name)
            networks.append(net)
        var_names = [
            d.var_name
            for net in networks
            for d in (*net.inputs, *net.hidden, *net.outputs)
        ]
        asserts = tuple(
            Assertion(expr=self.bool_expr(var_names, rng.randint(0, 3)))
            for _ in range(rng.randint(0, 4))
        )
        return Query(
            version=(rng.randint(0, 9), rng.randint(0, 99)),
            networks=tuple(networks),
            asserts=asserts,
        )


def random_queries(seed: int, count: int):
    gen = QueryGen(random.Random(seed))
    return [gen.query() for _ in range(count)]
