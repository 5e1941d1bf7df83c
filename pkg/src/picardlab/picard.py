"""Strictly commutative Picard groupoids.

Two concrete models are built from a two-term complex ``d: A -> B``:

* ``StrictModel``: objects are elements of B, an arrow ``x -> y`` is an
  element ``a`` of A with ``d(a) = y - x``. Every constraint is an identity.
* ``SkeletalModel``: objects are elements of pi0, every arrow is an
  automorphism labelled by pi1. Its constraints are obtained by transport
  along a comparison functor into the strict model, built from a section
  ``s`` of ``B -> pi0`` and a pi1-valued cochain ``g``.

Orientation conventions used throughout::

    assoc(X, Y, Z):  (X + Y) + Z -> X + (Y + Z)
    comm(X, Y):      X + Y -> Y + X
    unit_left(X):    e + X -> X
    unit_right(X):   X + e -> X
    phi():           e + e -> e
    inv(X):          X + (-X) -> e
    neg_zero():      -e -> e
    neg_distrib(X,Y): -(X + Y) -> (-X) + (-Y)
    neg_neg(X):      -(-X) -> X
"""

from __future__ import annotations

import random
import threading
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Union

from .complexes import ComplexMorphism, TwoTermComplex
from .expr import Add, Neg, Var, Zero, eval_expr
from .report import ERROR, FAIL, PASS, CheckResult, Report
from .zlin import FgAbelianGroup, GroupElement, GroupHom


class ModelMismatchError(ValueError):
    pass


class CompositionError(ValueError):
    pass


class SectionError(ValueError):
    pass


class CochainError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class PObject:
    kind: str
    value: GroupElement

    def __str__(self):
        return str(list(self.value.coords))


@dataclass(frozen=True, slots=True)
class PArrow:
    src: PObject
    dst: PObject
    payload: GroupElement

    def __str__(self):
        return f"{self.src} -[{list(self.payload.coords)}]-> {self.dst}"


def random_element(group: FgAbelianGroup, rng: random.Random, spread: int = 5) -> GroupElement:
    return group.element([rng.randrange(d) if d else rng.randint(-spread, spread) for d in group.factors])


class PicardGroupoid(ABC):
    """Interface shared by every model."""

    kind: str = "abstract"

    @abstractmethod
    def neutral(self) -> PObject: ...

    @abstractmethod
    def add(self, X: PObject, Y: PObject) -> PObject: ...

    @abstractmethod
    def neg(self, X: PObject) -> PObject: ...

    @abstractmethod
    def identity(self, X: PObject) -> PArrow: ...

    @abstractmethod
    def compose(self, g: PArrow, f: PArrow) -> PArrow:
        """``g ∘ f``."""

    @abstractmethod
    def inverse(self, f: PArrow) -> PArrow: ...

    @abstractmethod
    def add_arrows(self, f: PArrow, g: PArrow) -> PArrow: ...

    @abstractmethod
    def neg_arrow(self, f: PArrow) -> PArrow: ...

    @abstractmethod
    def assoc(self, X, Y, Z) -> PArrow: ...

    @abstractmethod
    def comm(self, X, Y) -> PArrow: ...

    @abstractmethod
    def unit_left(self, X) -> PArrow: ...

    @abstractmethod
    def unit_right(self, X) -> PArrow: ...

    @abstractmethod
    def phi(self) -> PArrow: ...

    @abstractmethod
    def inv(self, X) -> PArrow: ...

    @abstractmethod
    def neg_zero(self) -> PArrow: ...

    @abstractmethod
    def neg_distrib(self, X, Y) -> PArrow: ...

    @abstractmethod
    def neg_neg(self, X) -> PArrow: ...

    @abstractmethod
    def is_arrow(self, f: PArrow) -> bool: ...

    @abstractmethod
    def sample_object(self, rng: random.Random) -> PObject: ...

    @abstractmethod
    def sample_arrow(self, rng: random.Random, X: PObject) -> PArrow:
        """A random arrow with source ``X``."""

    def object_count(self) -> Optional[int]:
        return None

    def arrow_count(self) -> Optional[int]:
        return None

    def compose_all(self, *arrows: PArrow) -> PArrow:
        """``compose_all(h, g, f) == h ∘ g ∘ f``."""
        out = arrows[-1]
        for a in reversed(arrows[:-1]):
            out = self.compose(a, out)
        return out

    def unwhisker_neutral(self, k: PArrow, src: PObject, dst: PObject) -> PArrow:
        """Solve ``id_e + l == k`` for ``l: src -> dst``.

        Arrow sums add payloads in every model here, so the candidate is
        ``k - id_e``; it is verified against ``k`` before being returned.
        """
        e_id = self.identity(self.neutral())
        candidate = PArrow(src, dst, k.payload - e_id.payload)
        if self.add_arrows(e_id, candidate) != k:
            raise CompositionError("arrow is not of the form id_e + l")
        return candidate


class _PayloadModel(PicardGroupoid):
    """Shared arithmetic: objects and arrow payloads live in abelian groups."""

    objects: FgAbelianGroup
    payloads: FgAbelianGroup
    # arrow sums and composites add payloads and identities have payload 0,
    # so whiskering by identities leaves a payload unchanged
    payload_additive = True

    def _obj(self, value: GroupElement) -> PObject:
        return PObject(self.kind, value)

    def object(self, coords) -> PObject:
        return self._obj(self.objects.element(coords))

    def _check_obj(self, X: PObject):
        if X.kind != self.kind or X.value.group != self.objects:
            raise ModelMismatchError(f"object {X} does not belong to this {self.kind} model")

    def neutral(self):
        return self._obj(self.objects.zero())

    def add(self, X, Y):
        self._check_obj(X)
        self._check_obj(Y)
        return self._obj(X.value + Y.value)

    def neg(self, X):
        self._check_obj(X)
        return self._obj(-X.value)

    def identity(self, X):
        return PArrow(X, X, self.payloads.zero())

    def compose(self, g, f):
        if f.dst != g.src:
            raise CompositionError(f"cannot compose {g} after {f}")
        return PArrow(f.src, g.dst, f.payload + g.payload)

    def inverse(self, f):
        return PArrow(f.dst, f.src, -f.payload)

    def add_arrows(self, f, g):
        return PArrow(self.add(f.src, g.src), self.add(f.dst, g.dst), f.payload + g.payload)

    def neg_arrow(self, f):
        return PArrow(self.neg(f.src), self.neg(f.dst), -f.payload)

    def sample_object(self, rng):
        return self._obj(random_element(self.objects, rng))

    def element(self, coords) -> PObject:
        return self._obj(self.objects.element(coords))

    def object_count(self):
        return self.objects.order()

    def arrow_count(self):
        n, m = self.objects.order(), self.payloads.order()
        return None if n is None or m is None else n * m


class StrictModel(_PayloadModel):
    kind = "strict"

    def __init__(self, complex: TwoTermComplex):
        self.complex = complex
        self.objects = complex.B
        self.payloads = complex.A

    def __repr__(self):
        return f"StrictModel({self.complex})"

    def is_arrow(self, f):
        return (
            f.src.kind == f.dst.kind == self.kind
            and f.payload.group == self.payloads
            and self.complex.d(f.payload) == f.dst.value - f.src.value
        )

    def arrow(self, src: PObject, payload) -> PArrow:
        if not isinstance(payload, GroupElement):
            payload = self.payloads.element(payload)
        return PArrow(src, self._obj(src.value + self.complex.d(payload)), payload)

    def hom(self, X: PObject, Y: PObject) -> Optional[PArrow]:
        """One arrow ``X -> Y`` (deterministic), or None when Hom is empty.

        Hom(X, Y) is a torsor under pi1; all other arrows differ from this one
        by ``complex.pi1.inclusion``.
        """
        a = self.complex.d.preimage(Y.value - X.value)
        return None if a is None else PArrow(X, Y, a)

    def sample_arrow(self, rng, X):
        return self.arrow(X, random_element(self.payloads, rng))

    def assoc(self, X, Y, Z):
        return self.identity(self.add(self.add(X, Y), Z))

    def comm(self, X, Y):
        return self.identity(self.add(X, Y))

    def unit_left(self, X):
        return self.identity(self.add(self.neutral(), X))

    def unit_right(self, X):
        return self.identity(self.add(X, self.neutral()))

    def phi(self):
        return self.identity(self.neutral())

    def inv(self, X):
        return self.identity(self.add(X, self.neg(X)))

    def neg_zero(self):
        return self.identity(self.neutral())

    def neg_distrib(self, X, Y):
        return self.identity(self.neg(self.add(X, Y)))

    def neg_neg(self, X):
        return self.identity(X)


def strict_model(c: TwoTermComplex) -> StrictModel:
    return StrictModel(c)


_X, _Y, _Z = Var(1), Var(2), Var(3)

# lhs, rhs of each constraint as a formal sum; also the primitive rewrite rules.
WITNESS_SHAPES = {
    "assoc": (Add(Add(_X, _Y), _Z), Add(_X, Add(_Y, _Z))),
    "comm": (Add(_X, _Y), Add(_Y, _X)),
    "unit_left": (Add(Zero(), _X), _X),
    "unit_right": (Add(_X, Zero()), _X),
    "phi": (Add(Zero(), Zero()), Zero()),
    "inv": (Add(_X, Neg(_X)), Zero()),
    "neg_zero": (Neg(Zero()), Zero()),
    "neg_distrib": (Neg(Add(_X, _Y)), Add(Neg(_X), Neg(_Y))),
    "neg_neg": (Neg(Neg(_X)), _X),
}

Section = Union[None, str, Mapping, Callable]
Cochain = Union[None, Mapping, Callable]


class SkeletalModel(_PayloadModel):
    """Skeletal model: objects pi0, arrows pi1, constraints by transport.

    ``section``: ``None``/``"auto"`` for the lift coming from the Smith data,
    a mapping from pi0 coordinates to B coordinates (missing entries use the
    automatic lift), or a callable on pi0 elements.
    ``cochain``: mapping ``(x_coords, y_coords) -> pi1 coords`` (sparse,
    default 0) or a callable ``(x, y) -> pi1 element``.
    """

    kind = "skeletal"

    def __init__(self, complex: TwoTermComplex, section: Section = None, cochain: Cochain = None):
        self.complex = complex
        self.strict = StrictModel(complex)
        self._pi0 = complex.pi0
        self._pi1 = complex.pi1
        self.objects = self._pi0.group
        self.payloads = self._pi1.group
        self._section = self._make_section(section)
        self._cochain = self._make_cochain(cochain)
        self._cache: dict = {}
        self._lock = threading.Lock()
        zero = self.objects.zero()
        if not self._lift(zero).is_zero():
            raise SectionError("the section must send 0 to 0")

    def __repr__(self):
        return f"SkeletalModel({self.complex})"

    def _make_section(self, section):
        B, pi0 = self.complex.B, self._pi0
        if section is None or section == "auto":
            return pi0.lift
        if callable(section):
            return section
        table = {}
        items = section.items() if isinstance(section, Mapping) else section
        for key, value in items:
            x = self.objects.element(key)
            table[x] = B.element(value)
        return lambda x: table[x] if x in table else pi0.lift(x)

    def _make_cochain(self, cochain):
        if cochain is None:
            zero = self.payloads.zero()
            return lambda x, y: zero
        if callable(cochain):
            return cochain
        table = {}
        items = cochain.items() if isinstance(cochain, Mapping) else (((kx, ky), v) for kx, ky, v in cochain)
        for (kx, ky), value in items:
            try:
                key = (self.objects.element(kx), self.objects.element(ky))
                table[key] = self.payloads.element(value)
            except ValueError as exc:
                raise CochainError(f"bad cochain entry {kx}, {ky} -> {value}: {exc}") from exc
        zero = self.payloads.zero()
        return lambda x, y: table.get((x, y), zero)

    def _memo(self, key, compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache.setdefault(key, value)
        return value

    # comparison data into the strict model

    def _lift(self, x: GroupElement) -> GroupElement:
        def compute():
            b = self._section(x)
            if b.group != self.complex.B or self._pi0.projection(b) != x:
                raise SectionError(f"section value {b} does not lie over {x}")
            return b

        return self._memo(("s", x), compute)

    def section(self, X: PObject) -> PObject:
        return self.strict._obj(self._lift(X.value))

    def cochain(self, X: PObject, Y: PObject) -> GroupElement:
        g = self._cochain(X.value, Y.value)
        if g.group != self.payloads:
            raise CochainError(f"cochain value {g} is not in pi1 = {self.payloads}")
        return g

    def _solve(self, target: GroupElement) -> GroupElement:
        a = self.complex.d.preimage(target)
        if a is None:
            raise SectionError(f"{target} is not in the image of d")
        return a

    def carry(self, X: PObject, Y: PObject) -> PArrow:
        """``t(X, Y): s(X + Y) -> s(X) + s(Y)`` in the strict model."""

        def compute():
            sx, sy, sxy = self._lift(X.value), self._lift(Y.value), self._lift(X.value + Y.value)
            h = self._solve(sx + sy - sxy)
            payload = h + self._pi1.inclusion(self.cochain(X, Y))
            S = self.strict
            return PArrow(S._obj(sxy), S._obj(sx + sy), payload)

        return self._memo(("t", X, Y), compute)

    def neg_comparison(self, X: PObject) -> PArrow:
        """``n(X): s(-X) -> -s(X)`` in the strict model."""

        def compute():
            sx, snx = self._lift(X.value), self._lift(-X.value)
            S = self.strict
            return PArrow(S._obj(snx), S._obj(-sx), self._solve(-sx - snx))

        return self._memo(("n", X), compute)

    def comparison(self, e, env) -> PArrow:
        """Strict arrow ``s(eval_skel(e)) -> eval_strict(e)(s(env))``."""
        S = self.strict
        if isinstance(e, Zero):
            return S.identity(S.neutral())
        if isinstance(e, Var):
            return S.identity(self.section(env[e.index - 1]))
        if isinstance(e, Neg):
            inner = self.comparison(e.arg, env)
            v = eval_expr(e.arg, env, self)
            return S.compose(S.neg_arrow(inner), self.neg_comparison(v))
        left, right = self.comparison(e.left, env), self.comparison(e.right, env)
        vl, vr = eval_expr(e.left, env, self), eval_expr(e.right, env, self)
        return S.compose(S.add_arrows(left, right), self.carry(vl, vr))

    def _transport(self, name: str, *objs: PObject) -> PArrow:
        for X in objs:
            self._check_obj(X)

        def compute():
            lhs, rhs = WITNESS_SHAPES[name]
            S = self.strict
            strict_witness = getattr(S, name)(*[self.section(X) for X in objs])
            conj = S.compose_all(
                S.inverse(self.comparison(rhs, objs)),
                strict_witness,
                self.comparison(lhs, objs),
            )
            src, dst = eval_expr(lhs, objs, self), eval_expr(rhs, objs, self)
            if src != dst or conj.src != conj.dst:
                raise AssertionError("transported witness is not an automorphism")
            return PArrow(src, dst, self._pi1.retract(conj.payload))

        return self._memo((name, *objs), compute)

    def is_arrow(self, f):
        return (
            f.src == f.dst
            and f.src.kind == self.kind
            and f.src.value.group == self.objects
            and f.payload.group == self.payloads
        )

    def arrow(self, X: PObject, payload) -> PArrow:
        if not isinstance(payload, GroupElement):
            payload = self.payloads.element(payload)
        return PArrow(X, X, payload)

    def sample_arrow(self, rng, X):
        return PArrow(X, X, random_element(self.payloads, rng))

    def assoc(self, X, Y, Z):
        return self._transport("assoc", X, Y, Z)

    def comm(self, X, Y):
        return self._transport("comm", X, Y)

    def unit_left(self, X):
        return self._transport("unit_left", X)

    def unit_right(self, X):
        return self._transport("unit_right", X)

    def phi(self):
        return self._transport("phi")

    def inv(self, X):
        return self._transport("inv", X)

    def neg_zero(self):
        return self._transport("neg_zero")

    def neg_distrib(self, X, Y):
        return self._transport("neg_distrib", X, Y)

    def neg_neg(self, X):
        return self._transport("neg_neg", X)

    def to_strict(self) -> "AdditiveFunctor":
        """The equivalence skeletal -> strict (objects via the section)."""
        S = self.strict
        return AdditiveFunctor(
            self,
            S,
            self.section,
            lambda f: PArrow(self.section(f.src), self.section(f.dst), self._pi1.inclusion(f.payload)),
            self.carry,
            name="section",
        )

    def from_strict(self) -> "AdditiveFunctor":
        """The skeletalization strict -> skeletal (objects via projection)."""
        S = self.strict

        def project(b: PObject) -> PObject:
            return self._obj(self._pi0.projection(b.value))

        def kappa(b: PObject) -> PArrow:
            return self._memo(
                ("kappa", b),
                lambda: PArrow(b, self.section(project(b)), self._solve(self._lift(project(b).value) - b.value)),
            )

        def on_arrow(f: PArrow) -> PArrow:
            conj = S.compose_all(kappa(f.dst), f, S.inverse(kappa(f.src)))
            X = project(f.src)
            return PArrow(X, X, self._pi1.retract(conj.payload))

        def sigma(b1: PObject, b2: PObject) -> PArrow:
            X, Y = project(b1), project(b2)
            conj = S.compose_all(
                S.inverse(self.carry(X, Y)),
                S.add_arrows(kappa(b1), kappa(b2)),
                S.inverse(kappa(S.add(b1, b2))),
            )
            XY = self.add(X, Y)
            return PArrow(XY, XY, self._pi1.retract(conj.payload))

        return AdditiveFunctor(S, self, project, on_arrow, sigma, name="projection")


def skeletal_model(c: TwoTermComplex, section: Section = None, cochain_g: Cochain = None) -> SkeletalModel:
    return SkeletalModel(c, section, cochain_g)


def add_objects(P: PicardGroupoid, X: PObject, Y: PObject) -> PObject:
    return P.add(X, Y)


def add_arrows(P: PicardGroupoid, f: PArrow, g: PArrow) -> PArrow:
    return P.add_arrows(f, g)


def derive_left_unitor(P: PicardGroupoid, X: PObject) -> PArrow:
    """``l_X`` from the unit square ``(id_e + l_X) ∘ assoc(e, e, X) = phi + id_X``."""
    e = P.neutral()
    k = P.compose(P.add_arrows(P.phi(), P.identity(X)), P.inverse(P.assoc(e, e, X)))
    return P.unwhisker_neutral(k, P.add(e, X), X)


class FlippedComm(PicardGroupoid):
    """Test double: a model whose commutativity constraint has its sign flipped."""

    def __init__(self, base: PicardGroupoid):
        self.base = base
        self.kind = base.kind

    def comm(self, X, Y):
        c = self.base.comm(X, Y)
        return PArrow(c.src, c.dst, -c.payload)

    def __getattr__(self, name):
        return getattr(self.base, name)


for _name in (
    "neutral add neg identity compose inverse add_arrows neg_arrow assoc unit_left unit_right "
    "phi inv neg_zero neg_distrib neg_neg is_arrow sample_object sample_arrow object_count arrow_count"
).split():
    setattr(FlippedComm, _name, (lambda n: lambda self, *a: getattr(self.base, n)(*a))(_name))
FlippedComm.__abstractmethods__ = frozenset()


class AdditiveFunctor:
    """Functor with distributor ``sigma(X, Y): F(X + Y) -> F(X) + F(Y)``."""

    def __init__(self, source, target, on_object, on_arrow, distributor, name: str = ""):
        self.source = source
        self.target = target
        self._on_object = on_object
        self._on_arrow = on_arrow
        self._distributor = distributor
        self.name = name

    def __repr__(self):
        return f"AdditiveFunctor({self.name or '?'})"

    def on_object(self, X: PObject) -> PObject:
        return self._on_object(X)

    def on_arrow(self, f: PArrow) -> PArrow:
        return self._on_arrow(f)

    def distributor(self, X: PObject, Y: PObject) -> PArrow:
        return self._distributor(X, Y)

    def then(self, G: "AdditiveFunctor") -> "AdditiveFunctor":
        """``G ∘ self``."""
        F, T = self, G.target

        def sigma(X, Y):
            return T.compose(G.distributor(F.on_object(X), F.on_object(Y)), G.on_arrow(F.distributor(X, Y)))

        return AdditiveFunctor(
            F.source,
            T,
            lambda X: G.on_object(F.on_object(X)),
            lambda f: G.on_arrow(F.on_arrow(f)),
            sigma,
            name=f"{G.name}∘{F.name}",
        )

    def unit_comparison(self) -> PArrow:
        """``F(e) -> e'`` derived from the distributor and ``F(phi)``."""
        T = self.target
        Y = self.on_object(self.source.neutral())
        e = self.source.neutral()
        psi = T.compose(self.on_arrow(self.source.phi()), T.inverse(self.distributor(e, e)))
        return T.compose_all(
            T.inv(Y),
            T.add_arrows(psi, T.identity(T.neg(Y))),
            T.inverse(T.assoc(Y, Y, T.neg(Y))),
            T.add_arrows(T.identity(Y), T.inverse(T.inv(Y))),
            T.inverse(T.unit_right(Y)),
        )

    def neg_comparison(self, X: PObject) -> PArrow:
        """``F(-X) -> -F(X)`` derived from the distributor."""
        S, T = self.source, self.target
        FX, FnX = self.on_object(X), self.on_object(S.neg(X))
        nFX = T.neg(FX)
        return T.compose_all(
            T.unit_left(nFX),
            T.add_arrows(self.unit_comparison(), T.identity(nFX)),
            T.add_arrows(self.on_arrow(S.inv(X)), T.identity(nFX)),
            T.add_arrows(T.inverse(self.distributor(X, S.neg(X))), T.identity(nFX)),
            T.inverse(T.assoc(FX, FnX, nFX)),
            T.add_arrows(T.identity(FX), T.comm(nFX, FnX)),
            T.assoc(FX, nFX, FnX),
            T.add_arrows(T.inverse(T.inv(FX)), T.identity(FnX)),
            T.inverse(T.unit_left(FnX)),
        )


def identity_functor(P: PicardGroupoid) -> AdditiveFunctor:
    return AdditiveFunctor(P, P, lambda X: X, lambda f: f, lambda X, Y: P.identity(P.add(X, Y)), name="id")


def strict_functor(m: ComplexMorphism, source: StrictModel, target: StrictModel) -> AdditiveFunctor:
    fA, fB = m.fA, m.fB

    def on_object(X):
        return target._obj(fB(X.value))

    def on_arrow(f):
        return PArrow(on_object(f.src), on_object(f.dst), fA(f.payload))

    def sigma(X, Y):
        return target.identity(on_object(source.add(X, Y)))

    return AdditiveFunctor(source, target, on_object, on_arrow, sigma, name="strict")


def functor_from_complex_morphism(m: ComplexMorphism, source: PicardGroupoid, target: PicardGroupoid) -> AdditiveFunctor:
    """Additive functor induced by a complex morphism between two models.

    Skeletal endpoints are handled by conjugating the strict functor with the
    comparison equivalences.
    """
    for model, c in ((source, m.source), (target, m.target)):
        if not isinstance(model, (StrictModel, SkeletalModel)) or model.complex != c:
            raise ModelMismatchError("models are not built over the morphism's complexes")
    F = strict_functor(m, source if isinstance(source, StrictModel) else source.strict,
                       target if isinstance(target, StrictModel) else target.strict)
    if isinstance(source, SkeletalModel):
        F = source.to_strict().then(F)
    if isinstance(target, SkeletalModel):
        F = F.then(target.from_strict())
    return F


class AdditiveTransformation:
    """Components ``u_X: F(X) -> G(X)`` of a morphism of additive functors."""

    def __init__(self, source: AdditiveFunctor, target: AdditiveFunctor, component, name: str = ""):
        if source.source is not target.source or source.target is not target.target:
            raise ModelMismatchError("transformation between functors with different endpoints")
        self.source = source
        self.target = target
        self._component = component
        self.name = name

    def component(self, X: PObject) -> PArrow:
        return self._component(X)

    def whisker_left(self, K: AdditiveFunctor, F2: AdditiveFunctor, G2: AdditiveFunctor) -> "AdditiveTransformation":
        """``u * K`` between ``F2 = F∘K`` and ``G2 = G∘K``."""
        return AdditiveTransformation(F2, G2, lambda X: self.component(K.on_object(X)), name=self.name)

    def whisker_right(self, K: AdditiveFunctor, F2: AdditiveFunctor, G2: AdditiveFunctor) -> "AdditiveTransformation":
        """``K * u`` between ``F2 = K∘F`` and ``G2 = K∘G``."""
        return AdditiveTransformation(F2, G2, lambda X: K.on_arrow(self.component(X)), name=self.name)


def identity_transformation(F: AdditiveFunctor) -> AdditiveTransformation:
    return AdditiveTransformation(F, F, lambda X: F.target.identity(F.on_object(X)), name="id")


def homotopic_morphism(m: ComplexMorphism, h: GroupHom) -> ComplexMorphism:
    """``m + (h d, d' h)`` for a homotopy ``h: B -> A'``."""
    if h.source != m.source.B or h.target != m.target.A:
        raise ModelMismatchError("a homotopy must map B to A'")
    return ComplexMorphism(m.source, m.target, m.fA + h @ m.source.d, m.fB + m.target.d @ h)


def homotopy_transformation(m: ComplexMorphism, h: GroupHom, source: PicardGroupoid,
                            target: PicardGroupoid) -> AdditiveTransformation:
    """The transformation ``F_m => F_{m'}`` with strict components ``h(x)``,
    where ``m'`` is ``homotopic_morphism(m, h)``."""
    m2 = homotopic_morphism(m, h)
    F = functor_from_complex_morphism(m, source, target)
    G = functor_from_complex_morphism(m2, source, target)
    T = target.strict if isinstance(target, SkeletalModel) else target
    down = target.from_strict() if isinstance(target, SkeletalModel) else None

    def component(X):
        b = source.section(X) if isinstance(source, SkeletalModel) else X
        a = PArrow(T._obj(m.fB(b.value)), T._obj(m2.fB(b.value)), h(b.value))
        return down.on_arrow(a) if down else a

    return AdditiveTransformation(F, G, component, name="homotopy")


def automorphism_transformation(P: SkeletalModel, lam: GroupHom) -> AdditiveTransformation:
    """``id => id`` on a skeletal model with components ``lam(X)`` for a
    homomorphism ``lam: pi0 -> pi1``."""
    if lam.source != P.objects or lam.target != P.payloads:
        raise ModelMismatchError("lam must map pi0 to pi1")
    F = identity_functor(P)
    return AdditiveTransformation(F, F, lambda X: PArrow(X, X, lam(X.value)), name="automorphism")


# -- checks -----------------------------------------------------------------


def _rng(seed, name) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _pick_object(P, rng) -> PObject:
    return P.neutral() if rng.random() < 0.15 else P.sample_object(rng)


def _fmt(v):
    if isinstance(v, (PObject, PArrow)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_fmt(x) for x in v]
    if isinstance(v, dict):
        return {k: _fmt(x) for k, x in v.items()}
    return v


def run_check(name: str, cases: int, trial) -> CheckResult:
    """Run ``trial(i)`` for each case; it returns None on success or a
    counterexample dict on failure."""
    start = time.perf_counter()

    def elapsed():
        return round((time.perf_counter() - start) * 1000, 3)

    for i in range(cases):
        try:
            bad = trial(i)
        except (CompositionError, ModelMismatchError, ArithmeticError, ValueError) as exc:
            return CheckResult(name, ERROR, case=i, counterexample={"error": f"{type(exc).__name__}: {exc}"},
                               timing_ms=elapsed())
        if bad is not None:
            return CheckResult(name, FAIL, case=i, counterexample={k: _fmt(v) for k, v in bad.items()},
                               timing_ms=elapsed())
    return CheckResult(name, PASS, timing_ms=elapsed())


def _equal(lhs, rhs, **inputs):
    if lhs == rhs:
        return None
    return dict(inputs, lhs=lhs, rhs=rhs)


def picard_checks(P: PicardGroupoid):
    """Named trials for every Picard axiom; each takes an rng."""
    c = P.compose_all
    add, idn, inv = P.add_arrows, P.identity, P.inverse
    e = P.neutral()

    def obj(rng):
        return _pick_object(P, rng)

    def arr(rng):
        return P.sample_arrow(rng, obj(rng))

    def endpoints(rng):
        X, Y, Z = obj(rng), obj(rng), obj(rng)
        expected = {
            "assoc": (P.assoc(X, Y, Z), P.add(P.add(X, Y), Z), P.add(X, P.add(Y, Z))),
            "comm": (P.comm(X, Y), P.add(X, Y), P.add(Y, X)),
            "unit_left": (P.unit_left(X), P.add(e, X), X),
            "unit_right": (P.unit_right(X), P.add(X, e), X),
            "phi": (P.phi(), P.add(e, e), e),
            "inv": (P.inv(X), P.add(X, P.neg(X)), e),
            "neg_zero": (P.neg_zero(), P.neg(e), e),
            "neg_distrib": (P.neg_distrib(X, Y), P.neg(P.add(X, Y)), P.add(P.neg(X), P.neg(Y))),
            "neg_neg": (P.neg_neg(X), P.neg(P.neg(X)), X),
        }
        for name, (w, src, dst) in expected.items():
            if not P.is_arrow(w) or w.src != src or w.dst != dst:
                return {"witness": name, "X": X, "Y": Y, "Z": Z, "arrow": w}
        return None

    def bifunctor_identity(rng):
        X, Y = obj(rng), obj(rng)
        return _equal(add(idn(X), idn(Y)), idn(P.add(X, Y)), X=X, Y=Y)

    def bifunctor_interchange(rng):
        f, g = arr(rng), arr(rng)
        f2, g2 = P.sample_arrow(rng, f.dst), P.sample_arrow(rng, g.dst)
        return _equal(add(P.compose(f2, f), P.compose(g2, g)), P.compose(add(f2, g2), add(f, g)), f=f, g=g, f2=f2, g2=g2)

    def pentagon(rng):
        W, X, Y, Z = obj(rng), obj(rng), obj(rng), obj(rng)
        lhs = P.compose(P.assoc(W, X, P.add(Y, Z)), P.assoc(P.add(W, X), Y, Z))
        rhs = c(add(idn(W), P.assoc(X, Y, Z)), P.assoc(W, P.add(X, Y), Z), add(P.assoc(W, X, Y), idn(Z)))
        return _equal(lhs, rhs, W=W, X=X, Y=Y, Z=Z)

    def hexagon(rng):
        X, Y, Z = obj(rng), obj(rng), obj(rng)
        lhs = c(P.assoc(Y, Z, X), P.comm(X, P.add(Y, Z)), P.assoc(X, Y, Z))
        rhs = c(add(idn(Y), P.comm(X, Z)), P.assoc(Y, X, Z), add(P.comm(X, Y), idn(Z)))
        return _equal(lhs, rhs, X=X, Y=Y, Z=Z)

    def hexagon_inverse(rng):
        X, Y, Z = obj(rng), obj(rng), obj(rng)
        lhs = c(inv(P.assoc(Z, X, Y)), P.comm(P.add(X, Y), Z), inv(P.assoc(X, Y, Z)))
        rhs = c(add(P.comm(X, Z), idn(Y)), inv(P.assoc(X, Z, Y)), add(idn(X), P.comm(Y, Z)))
        return _equal(lhs, rhs, X=X, Y=Y, Z=Z)

    def symmetry(rng):
        X, Y = obj(rng), obj(rng)
        return _equal(P.compose(P.comm(Y, X), P.comm(X, Y)), idn(P.add(X, Y)), X=X, Y=Y)

    def strictness(rng):
        X = obj(rng)
        return _equal(P.comm(X, X), idn(P.add(X, X)), X=X)

    def unit_diagram_left(rng):
        X = obj(rng)
        return _equal(P.compose(add(idn(e), P.unit_left(X)), P.assoc(e, e, X)), add(P.phi(), idn(X)), X=X)

    def unit_diagram_right(rng):
        X = obj(rng)
        return _equal(P.compose(add(idn(X), P.phi()), P.assoc(X, e, e)), add(P.unit_right(X), idn(e)), X=X)

    def triangle(rng):
        X, Y = obj(rng), obj(rng)
        return _equal(P.compose(add(idn(X), P.unit_left(Y)), P.assoc(X, e, Y)), add(P.unit_right(X), idn(Y)), X=X, Y=Y)

    def phi_unitors(rng):
        bad = _equal(P.unit_left(e), P.phi(), which="l_e")
        return bad or _equal(P.unit_right(e), P.phi(), which="r_e")

    def comm_exchanges_unitors(rng):
        X = obj(rng)
        return _equal(P.compose(P.unit_left(X), P.comm(X, e)), P.unit_right(X), X=X)

    def inverse_naturality(rng):
        f = arr(rng)
        return _equal(P.compose(P.inv(f.dst), add(f, P.neg_arrow(f))), P.inv(f.src), f=f)

    def inverse_sum(rng):
        X, Y = obj(rng), obj(rng)
        nX, nY = P.neg(X), P.neg(Y)
        lhs = P.inv(P.add(X, Y))
        shuffle = c(
            inv(P.assoc(X, nX, P.add(Y, nY))),
            add(idn(X), P.assoc(nX, Y, nY)),
            add(idn(X), add(P.comm(Y, nX), idn(nY))),
            add(idn(X), inv(P.assoc(Y, nX, nY))),
            P.assoc(X, Y, P.add(nX, nY)),
        )
        rhs = c(P.phi(), add(P.inv(X), P.inv(Y)), shuffle, add(idn(P.add(X, Y)), P.neg_distrib(X, Y)))
        return _equal(lhs, rhs, X=X, Y=Y)

    def inverse_negation(rng):
        X = obj(rng)
        nX = P.neg(X)
        rhs = c(P.inv(X), P.comm(nX, X), add(idn(nX), P.neg_neg(X)))
        return _equal(P.inv(nX), rhs, X=X)

    def inverse_neutral(rng):
        return _equal(P.inv(e), P.compose(P.phi(), add(idn(e), P.neg_zero())))

    def naturality_assoc(rng):
        f, g, h = arr(rng), arr(rng), arr(rng)
        lhs = P.compose(P.assoc(f.dst, g.dst, h.dst), add(add(f, g), h))
        rhs = P.compose(add(f, add(g, h)), P.assoc(f.src, g.src, h.src))
        return _equal(lhs, rhs, f=f, g=g, h=h)

    def naturality_comm(rng):
        f, g = arr(rng), arr(rng)
        return _equal(P.compose(P.comm(f.dst, g.dst), add(f, g)), P.compose(add(g, f), P.comm(f.src, g.src)), f=f, g=g)

    def naturality_unit_left(rng):
        f = arr(rng)
        return _equal(P.compose(P.unit_left(f.dst), add(idn(e), f)), P.compose(f, P.unit_left(f.src)), f=f)

    def naturality_unit_right(rng):
        f = arr(rng)
        return _equal(P.compose(P.unit_right(f.dst), add(f, idn(e))), P.compose(f, P.unit_right(f.src)), f=f)

    def naturality_neg_distrib(rng):
        f, g = arr(rng), arr(rng)
        lhs = P.compose(P.neg_distrib(f.dst, g.dst), P.neg_arrow(add(f, g)))
        rhs = P.compose(add(P.neg_arrow(f), P.neg_arrow(g)), P.neg_distrib(f.src, g.src))
        return _equal(lhs, rhs, f=f, g=g)

    def naturality_neg_neg(rng):
        f = arr(rng)
        return _equal(P.compose(P.neg_neg(f.dst), P.neg_arrow(P.neg_arrow(f))), P.compose(f, P.neg_neg(f.src)), f=f)

    return {
        name: fn
        for name, fn in locals().items()
        if callable(fn) and name not in ("c", "add", "idn", "inv", "obj", "arr")
    }


def check_picard_axioms(P: PicardGroupoid, cases: int = 20, seed: int = 0) -> Report:
    report = Report()
    for name, trial in sorted(picard_checks(P).items()):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


def check_unitors(P: PicardGroupoid, cases: int = 20, seed: int = 0) -> Report:
    report = Report()
    rng = _rng(seed, "derived_left_unitor")

    def derived(i):
        X = P.neutral() if i == 0 else _pick_object(P, rng)
        return _equal(derive_left_unitor(P, X), P.unit_left(X), X=X)

    report.add(run_check("derived_left_unitor", cases, derived))
    report.add(run_check("derived_unitor_at_neutral", 1, lambda i: _equal(derive_left_unitor(P, P.neutral()), P.phi())))
    return report


def check_additive_functor(F: AdditiveFunctor, cases: int = 20, seed: int = 0) -> Report:
    S, T = F.source, F.target
    add = T.add_arrows
    idn = T.identity

    def obj(rng):
        return _pick_object(S, rng)

    def arr(rng):
        return S.sample_arrow(rng, obj(rng))

    def preserves_identity(rng):
        X = obj(rng)
        return _equal(F.on_arrow(S.identity(X)), idn(F.on_object(X)), X=X)

    def preserves_composition(rng):
        f = arr(rng)
        g = S.sample_arrow(rng, f.dst)
        return _equal(F.on_arrow(S.compose(g, f)), T.compose(F.on_arrow(g), F.on_arrow(f)), f=f, g=g)

    def arrows_valid(rng):
        f = arr(rng)
        Ff = F.on_arrow(f)
        if T.is_arrow(Ff) and Ff.src == F.on_object(f.src) and Ff.dst == F.on_object(f.dst):
            return None
        return {"f": f, "F(f)": Ff}

    def distributor_endpoints(rng):
        X, Y = obj(rng), obj(rng)
        s = F.distributor(X, Y)
        if T.is_arrow(s) and s.src == F.on_object(S.add(X, Y)) and s.dst == T.add(F.on_object(X), F.on_object(Y)):
            return None
        return {"X": X, "Y": Y, "sigma": s}

    def distributor_naturality(rng):
        f, g = arr(rng), arr(rng)
        lhs = T.compose(F.distributor(f.dst, g.dst), F.on_arrow(S.add_arrows(f, g)))
        rhs = T.compose(add(F.on_arrow(f), F.on_arrow(g)), F.distributor(f.src, g.src))
        return _equal(lhs, rhs, f=f, g=g)

    def compatible_assoc(rng):
        X, Y, Z = obj(rng), obj(rng), obj(rng)
        FX, FY, FZ = F.on_object(X), F.on_object(Y), F.on_object(Z)
        lhs = T.compose_all(
            add(idn(FX), F.distributor(Y, Z)), F.distributor(X, S.add(Y, Z)), F.on_arrow(S.assoc(X, Y, Z))
        )
        rhs = T.compose_all(
            T.assoc(FX, FY, FZ), add(F.distributor(X, Y), idn(FZ)), F.distributor(S.add(X, Y), Z)
        )
        return _equal(lhs, rhs, X=X, Y=Y, Z=Z)

    def compatible_comm(rng):
        X, Y = obj(rng), obj(rng)
        lhs = T.compose(T.comm(F.on_object(X), F.on_object(Y)), F.distributor(X, Y))
        rhs = T.compose(F.distributor(Y, X), F.on_arrow(S.comm(X, Y)))
        return _equal(lhs, rhs, X=X, Y=Y)

    report = Report()
    for name, trial in sorted(locals().items()):
        if name in ("obj", "arr", "add", "idn", "report", "S", "T", "F", "cases", "seed") or not callable(trial):
            continue
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report


def check_additive_transformation(u: AdditiveTransformation, cases: int = 20, seed: int = 0) -> Report:
    F, G = u.source, u.target
    S, T = F.source, F.target

    def obj(rng):
        return _pick_object(S, rng)

    def components_valid(rng):
        X = obj(rng)
        a = u.component(X)
        if T.is_arrow(a) and a.src == F.on_object(X) and a.dst == G.on_object(X):
            return None
        return {"X": X, "u_X": a}

    def naturality(rng):
        f = S.sample_arrow(rng, obj(rng))
        lhs = T.compose(G.on_arrow(f), u.component(f.src))
        rhs = T.compose(u.component(f.dst), F.on_arrow(f))
        return _equal(lhs, rhs, f=f)

    def compatible_distributor(rng):
        X, Y = obj(rng), obj(rng)
        lhs = T.compose(G.distributor(X, Y), u.component(S.add(X, Y)))
        rhs = T.compose(T.add_arrows(u.component(X), u.component(Y)), F.distributor(X, Y))
        return _equal(lhs, rhs, X=X, Y=Y)

    report = Report()
    for name, trial in (("components_valid", components_valid), ("naturality", naturality),
                        ("compatible_distributor", compatible_distributor)):
        rng = _rng(seed, name)
        report.add(run_check(name, cases, lambda i, t=trial, r=rng: t(r)))
    return report
