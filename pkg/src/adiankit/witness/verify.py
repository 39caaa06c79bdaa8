"""Independent certificate verifier.

The verifier re-derives every syntactic side condition from the certificate
and the presentation alone: relation occurrences are re-matched against the
subject, rewritten words are recomputed and compared with the stored child
subjects, factorizations are checked for exact coverage, p p^-1 factors are
split and compared literally, and Dyck leaves are freely reduced.  It shares
no code with certificate generation beyond the data model and free reduction.
"""

from __future__ import annotations

from ..munn import Word, free_reduce, inverse_word, positive_word
from ..presentation import Presentation
from .certificate import (
    Certificate,
    DropIdempotents,
    DyckBase,
    ProductOfIdempotents,
    RelationSubst,
)

__all__ = ["verify", "verify_with_trace"]


def verify(cert: Certificate, p: Presentation) -> bool:
    """True when every step's side conditions hold and all children verify."""
    ok, _ = verify_with_trace(cert, p)
    return ok


def verify_with_trace(cert: Certificate, p: Presentation) -> tuple[bool, str | None]:
    """Like :func:`verify` but reporting the locus of the first failure."""
    return _check(cert, p, "root")


def _fail(locus: str, why: str) -> tuple[bool, str]:
    return False, f"{locus}: {why}"


def _check(cert: Certificate, p: Presentation, locus: str) -> tuple[bool, str | None]:
    subject = cert.subject
    if not subject:
        return _fail(locus, "empty subject denotes no semigroup element")
    step = cert.step

    if isinstance(step, DyckBase):
        if cert.children:
            return _fail(locus, "dyck_base must not have children")
        if free_reduce(subject):
            return _fail(locus, "subject does not freely reduce to the empty word")
        return True, None

    if isinstance(step, RelationSubst):
        return _check_relation_subst(cert, step, p, locus)

    if isinstance(step, DropIdempotents):
        return _check_drop(cert, step, p, locus)

    if isinstance(step, ProductOfIdempotents):
        return _check_product(cert, step, p, locus)

    return _fail(locus, f"unknown step type {type(step).__name__}")


def _check_relation_subst(
    cert: Certificate, step: RelationSubst, p: Presentation, locus: str
) -> tuple[bool, str | None]:
    subject = cert.subject
    if not 0 <= step.relation < len(p.relations):
        return _fail(locus, f"unknown relation index {step.relation}")
    rel = p.relations[step.relation]
    if step.direction == "lhs_to_rhs":
        pattern_plain, replacement_plain = rel.lhs, rel.rhs
    elif step.direction == "rhs_to_lhs":
        pattern_plain, replacement_plain = rel.rhs, rel.lhs
    else:
        return _fail(locus, f"bad direction {step.direction!r}")
    pattern: Word = positive_word(pattern_plain)
    replacement: Word = positive_word(replacement_plain)
    if step.inverted:
        pattern = inverse_word(pattern)
        replacement = inverse_word(replacement)
    pos = step.position
    if not (0 <= pos and pos + len(pattern) <= len(subject)):
        return _fail(locus, f"position {pos} out of range")
    if subject[pos : pos + len(pattern)] != pattern:
        return _fail(locus, "occurrence mismatch: subject does not contain the cited side there")
    if len(cert.children) != 1:
        return _fail(locus, f"relation_subst needs exactly one child, found {len(cert.children)}")
    rewritten = subject[:pos] + replacement + subject[pos + len(pattern) :]
    child = cert.children[0]
    if child.subject != rewritten:
        return _fail(locus, "child subject is not the rewritten word")
    return _check(child, p, locus + ".children[0]")


def _check_drop(
    cert: Certificate, step: DropIdempotents, p: Presentation, locus: str
) -> tuple[bool, str | None]:
    subject = cert.subject
    if not step.factors:
        return _fail(locus, "drop_idempotents needs at least one factor")
    certified = [f for f in step.factors if f.kind == "certified"]
    if len(cert.children) != len(certified) + 1:
        return _fail(
            locus,
            f"expected {len(certified) + 1} children "
            f"({len(certified)} certified factors plus the remainder), found {len(cert.children)}",
        )
    last_index = len(cert.children) - 1
    seen_children: set[int] = set()
    prev_end = 0
    remainder: Word = ()
    for i, f in enumerate(step.factors):
        if not (prev_end <= f.start < f.end <= len(subject)):
            return _fail(locus, f"factor {i}: bad or overlapping span [{f.start},{f.end})")
        remainder += subject[prev_end : f.start]
        prev_end = f.end
        piece = subject[f.start : f.end]
        if f.kind == "pp_inverse":
            if len(piece) % 2 != 0:
                return _fail(locus, f"factor {i}: odd length cannot be p p^-1")
            half = len(piece) // 2
            if piece[half:] != inverse_word(piece[:half]):
                return _fail(locus, f"factor {i}: not literally p p^-1")
        elif f.kind == "certified":
            k = f.child
            if k is None or not 0 <= k < len(cert.children):
                return _fail(locus, f"factor {i}: bad child index {k}")
            if k == last_index:
                return _fail(locus, f"factor {i}: child index {k} collides with the remainder child")
            if k in seen_children:
                return _fail(locus, f"factor {i}: child index {k} used twice")
            seen_children.add(k)
            if cert.children[k].subject != piece:
                return _fail(locus, f"factor {i}: child subject differs from the factor")
        else:
            return _fail(locus, f"factor {i}: unknown kind {f.kind!r}")
    remainder += subject[prev_end:]
    if not remainder:
        return _fail(locus, "remainder is empty; use product_of_idempotents instead")
    if cert.children[last_index].subject != remainder:
        return _fail(locus, "remainder child subject mismatch")
    for k, child in enumerate(cert.children):
        ok, why = _check(child, p, f"{locus}.children[{k}]")
        if not ok:
            return ok, why
    return True, None


def _check_product(
    cert: Certificate, step: ProductOfIdempotents, p: Presentation, locus: str
) -> tuple[bool, str | None]:
    subject = cert.subject
    if not step.factors:
        return _fail(locus, "product_of_idempotents needs at least one factor")
    if len(cert.children) != len(step.factors):
        return _fail(
            locus,
            f"expected one child per factor ({len(step.factors)}), found {len(cert.children)}",
        )
    cursor = 0
    for i, f in enumerate(step.factors):
        if f.start != cursor or not f.start < f.end <= len(subject):
            return _fail(locus, f"factor {i}: factors must tile the subject, bad span [{f.start},{f.end})")
        cursor = f.end
        if cert.children[i].subject != subject[f.start : f.end]:
            return _fail(locus, f"factor {i}: child subject differs from the factor")
    if cursor != len(subject):
        return _fail(locus, "factors do not cover the subject")
    for k, child in enumerate(cert.children):
        ok, why = _check(child, p, f"{locus}.children[{k}]")
        if not ok:
            return ok, why
    return True, None
