"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 malformed input, 3 semantic error
(signature/law mismatch, non-associative or non-dualizable law).
"""

from __future__ import annotations

import argparse
import sys

from .coalgebra import delta_conc, delta_phi
from .errors import (
    DomainError,
    LawError,
    NotAssociativeError,
    NotDualizableError,
    ParseError,
    SignatureMismatch,
)
from .laws import check_law, make_law, parse_law_selector
from .lyndon import decompose_in_basis, lyndon_words
from .shuffle import phi_shuffle
from .words import (
    Signature,
    infer_signature,
    parse_letters,
    parse_poly,
    parse_word,
    poly_lines,
    print_poly,
    word_text,
)
from .zeta import verify_product_identity

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SEMANTIC = 0, 1, 2, 3


class CheckFailed(Exception):
    pass


def _law_and_signature(args, texts):
    """Build the law; the signature comes from --signature, the law, or the input text."""
    name, params = parse_law_selector(args.law)
    sig = Signature.parse(args.signature) if args.signature else None
    law = make_law(name, params, sig)
    if sig is None:
        sig = law.signature
    if sig is None:
        sig = infer_signature(texts)
    if sig is None:
        raise SignatureMismatch("cannot infer a signature from empty input; pass --signature")
    law.check_signature(sig)
    return law, sig


def _window(text, sig):
    letters = parse_letters(text, sig)
    if not letters:
        raise ParseError("empty window", text, 0)
    return letters


def cmd_product(args, out):
    law, sig = _law_and_signature(args, [args.u, args.v])
    u = parse_word(args.u, sig)
    v = parse_word(args.v, sig)
    P = phi_shuffle(u, v, law, signature=sig)
    if args.machine:
        out.extend(poly_lines(P))
    else:
        out.append(print_poly(P, explicit_ones=True, descending=True))


def _alphabet_signature(text):
    symbols = [s for s in text.replace(",", "<").replace(" ", "<").split("<") if s]
    if symbols and all(s.isidentifier() for s in symbols):
        if len(set(symbols)) != len(symbols):
            raise ParseError("repeated symbol in alphabet", text, 0)
        return Signature.enum(*symbols)
    return infer_signature([text])


def cmd_lyndon(args, out):
    sig = Signature.parse(args.signature) if args.signature else _alphabet_signature(args.alphabet)
    if sig is None:
        raise ParseError("empty alphabet", args.alphabet, 0)
    if args.max < 1:
        raise ParseError("--max must be >= 1", str(args.max), 0)
    words = lyndon_words(_window(args.alphabet, sig), args.max)
    if args.machine:
        out.extend(word_text(w) for w in words)
    else:
        out.append(" ".join(word_text(w, compact=True) for w in words))


def cmd_decompose(args, out):
    law, sig = _law_and_signature(args, [args.poly, args.window or ""])
    P = parse_poly(args.poly, sig)
    window = _window(args.window, sig) if args.window else None
    d = decompose_in_basis(P, law, window)
    sep = "\t" if args.machine else " "
    out.extend(f"{c}{sep}{a}" for a, c in d.coefficients)
    if not d.coefficients:
        out.append("0")


def cmd_lawcheck(args, out):
    law, sig = _law_and_signature(args, [args.window])
    report = check_law(law, _window(args.window, sig), args.rounds, args.threshold, args.max_letters)
    out.extend(report.lines())


def cmd_coproduct(args, out):
    if args.kind == "conc":
        if args.law:
            _, sig = _law_and_signature(args, [args.word])
        else:
            sig = Signature.parse(args.signature) if args.signature else infer_signature([args.word])
        if sig is None:
            raise SignatureMismatch("cannot infer a signature; pass --signature")
        T = delta_conc(parse_word(args.word, sig), sig)
    else:
        if not args.law:
            raise LawError("--kind phi needs --law")
        law, sig = _law_and_signature(args, [args.word, args.window or ""])
        window = _window(args.window, sig) if args.window else None
        T = delta_phi(parse_word(args.word, sig), law, window, sig)
    if args.machine:
        out.extend(T.lines())
    else:
        out.append(str(T))


def cmd_zetacheck(args, out):
    law, sig = _law_and_signature(args, [args.left, args.right])
    if args.N < 0:
        raise ParseError("-N must be >= 0", str(args.N), 0)
    left = parse_word(args.left, sig)
    right = parse_word(args.right, sig)
    r = verify_product_identity(args.N, left, right, law, centre=args.centre, power=args.power)
    if r.equal:
        out.append(f"OK lhs=rhs={r.lhs}")
    else:
        out.append(f"FAIL lhs={r.lhs} rhs={r.rhs}")
        raise CheckFailed()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phishuffle", description="phi-shuffle products on words over structured alphabets")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, law_required=True):
        sp.add_argument("--law", required=law_required, help="law selector, e.g. stuffle or qshuffle:q=1/2")
        sp.add_argument("--signature", help="e.g. weight,centre or enum(a<b<c)")
        sp.add_argument("--machine", action="store_true", help="one tab-separated term per line")

    sp = sub.add_parser("product", help="u *phi v")
    common(sp)
    sp.add_argument("u")
    sp.add_argument("v")
    sp.set_defaults(func=cmd_product)

    sp = sub.add_parser("lyndon", help="Lyndon words up to a length")
    sp.add_argument("--alphabet", required=True, help='ordered letters, e.g. "a<b"')
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--signature")
    sp.add_argument("--machine", action="store_true")
    sp.set_defaults(func=cmd_lyndon)

    sp = sub.add_parser("decompose", help="coefficients in the multi-index power basis")
    common(sp)
    sp.add_argument("--window", help="letter window (defaults to the letters of the polynomial)")
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("lawcheck", help="commutativity, associativity, dualizability evidence")
    common(sp)
    sp.add_argument("--window", required=True)
    sp.add_argument("--rounds", type=int, default=3)
    sp.add_argument("--threshold", type=int, default=8)
    sp.add_argument("--max-letters", type=int, default=64)
    sp.set_defaults(func=cmd_lawcheck)

    sp = sub.add_parser("coproduct", help="deconcatenation or the phi-dual coproduct")
    common(sp, law_required=False)
    sp.add_argument("--kind", choices=("conc", "phi"), default="conc")
    sp.add_argument("--window")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_coproduct)

    sp = sub.add_parser("zetacheck", help="truncated sum product identity")
    common(sp)
    sp.add_argument("-N", type=int, required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--centre", default="0", help="common centre for stuffle words")
    sp.add_argument("--power", type=int, default=1, help="character exponent m in xi -> xi^m")
    sp.set_defaults(func=cmd_zetacheck)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    out: list = []
    code = EXIT_OK
    try:
        args.func(args, out)
    except CheckFailed:
        code = EXIT_FAIL
    except (ParseError, DomainError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except (SignatureMismatch, LawError, NotAssociativeError, NotDualizableError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_SEMANTIC
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_SEMANTIC
    for line in out:
        print(line, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
