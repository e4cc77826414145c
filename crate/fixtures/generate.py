#!/usr/bin/env python3
"""Regenerate the fixture libraries.

Writes, next to this script:
  initial.v / initial.trace          70 plain Coq lemmas on nat, bool and lists
  bigop.v / bigop.trace              205 SSReflect lemmas about sums and products
  sum_first_n_partial.trace          the first steps of sum_first_n

Every lemma is described once, as a list of proof steps; the script text and
the trace sidecar are both rendered from that description so they always
agree.
"""

from pathlib import Path

HERE = Path(__file__).resolve().parent


# ---------------------------------------------------------------- description


def a(word, ty, kind="none"):
    """One tactic argument. kind: none | hyp | ih | lemma."""
    return (word, ty, kind)


def lem(word):
    return a(word, "Prop", "lemma")


def t(name, *args):
    return (name, list(args))


def s(top, subgoals, *tactics, by=False, text=None):
    """One proof step. `text` overrides the rendered script sentence."""
    return {"top": top, "subgoals": subgoals, "tactics": list(tactics), "by": by, "text": text}


class Lemma:
    def __init__(self, name, statement, steps):
        self.name = name
        self.statement = statement
        self.steps = steps


# ----------------------------------------------------------------- rendering


def render_tactic(name, args, ssr):
    words = [w for (w, _, _) in args]
    if not words:
        return name
    if name == "move/":
        head, rest = words[0], words[1:]
        return f"move/{head}" + (f" => [_ {' '.join(rest)}]" if rest else "")
    if name in ("move =>", "move :"):
        return f"{name} {' '.join(words)}"
    if ssr and name in ("elim", "case"):
        return f"{name} : {' '.join(words)}"
    return f"{name} {' '.join(words)}"


def render_script(lemma, ssr):
    out = [f"Lemma {lemma.name} : {lemma.statement}.", "Proof."]
    for st in lemma.steps:
        if st["text"]:
            out.append(st["text"])
            continue
        text = "; ".join(render_tactic(n, args, ssr) for (n, args) in st["tactics"])
        if st["by"]:
            text = "by " + text
        out.append(f"{text}.")
    out.append("Qed.")
    return "\n".join(out) + "\n"


def render_trace(lemma, steps=None):
    steps = lemma.steps if steps is None else steps
    out = [f"lemma {lemma.name}", f"statement {lemma.statement}"]
    for st in steps:
        out.append(f"step top={st['top']} subgoals={st['subgoals']}")
        for name, args in st["tactics"]:
            line = f"  tactic {name}"
            for word, ty, kind in args:
                arg_text = f"{ty}:{kind}" + (f":{word}" if kind == "lemma" else "")
                line += f" arg {arg_text}"
            out.append(line)
    return out


def write_library(stem, library, lemmas, ssr):
    names = [l.name for l in lemmas]
    assert len(names) == len(set(names)), f"duplicate names in {library}"
    header = "From mathcomp Require Import all_ssreflect.\n\n" if ssr else ""
    (HERE / f"{stem}.v").write_text(header + "\n".join(render_script(l, ssr) for l in lemmas))
    lines = [f"library {library}"]
    for l in lemmas:
        lines += render_trace(l) + ["qed"]
    (HERE / f"{stem}.trace").write_text("\n".join(lines) + "\n")


# ------------------------------------------------------------ Initial library


def ind_short(name, var, ty, statement):
    """induction; simpl;trivial; simpl;trivial"""
    return Lemma(name, statement, [
        s("forall", 2, t("induction", a(var, ty))),
        s("equal", 0, t("simpl"), t("trivial")),
        s("equal", 0, t("simpl"), t("trivial")),
    ])


def ind_long(name, var, ty, statement):
    """induction; simpl;trivial; simpl;rewrite IH;trivial"""
    ih = "IH" + var
    return Lemma(name, statement, [
        s("forall", 2, t("induction", a(var, ty))),
        s("equal", 0, t("simpl"), t("trivial")),
        s("equal", 0, t("simpl"), t("rewrite", a(ih, "Prop", "ih")), t("trivial")),
    ])


def simp(name, var, ty, statement):
    """intro; simpl;trivial"""
    return Lemma(name, statement, [
        s("forall", 1, t("intro", a(var, ty))),
        s("equal", 0, t("simpl"), t("trivial")),
    ])


def initial_library():
    ls = [
        # proofs by induction
        ind_short("mult_n_0", "n", "nat", "forall n : nat, 0 = n * 0"),
        ind_short("minus_n_0", "n", "nat", "forall n : nat, n = n - 0"),
        ind_long("plus_n_0", "n", "nat", "forall n : nat, n = n + 0"),
        ind_long("app_l_nil", "l", "list", "forall (A : Type) (l : list A), l ++ [] = l"),
        ind_long("mult_n_1", "n", "nat", "forall n : nat, n * 1 = n"),
        ind_short("map_id_nil", "l", "list", "forall (A : Type) (l : list A), map id l = l"),
        # proofs by simplification
        simp("mult_0_n", "n", "nat", "forall n : nat, 0 * n = 0"),
        simp("app_nil_l", "l", "list", "forall (A : Type) (l : list A), [] ++ l = l"),
        simp("plus_0_n", "n", "nat", "forall n : nat, 0 + n = n"),
        simp("minus_0_n", "n", "nat", "forall n : nat, 0 - n = 0"),
        simp("rev_nil", "l", "list", "forall (A : Type) (l : list A), rev [] ++ l = l"),
        simp("length_nil", "l", "list", "forall (A : Type) (l : list A), length ([] ++ l) = length l"),
    ]

    # boolean case analysis
    for i, (op, st) in enumerate([
        ("andb_true_l", "forall b : bool, true && b = b"),
        ("andb_false_r", "forall b : bool, b && false = false"),
        ("orb_true_r", "forall b : bool, b || true = true"),
        ("orb_false_r", "forall b : bool, b || false = b"),
        ("negb_involutive", "forall b : bool, negb (negb b) = b"),
        ("andb_diag", "forall b : bool, b && b = b"),
        ("orb_diag", "forall b : bool, b || b = b"),
        ("xorb_nilpotent", "forall b : bool, xorb b b = false"),
    ]):
        ls.append(Lemma(op, st, [
            s("forall", 1, t("intros", a("b", "bool"))),
            s("equal", 2, t("destruct", a("b", "bool", "hyp"))),
            s("equal", 0, t("simpl"), t("reflexivity")),
            s("equal", 0, t("simpl"), t("reflexivity")),
        ]))

    # order lemmas closed by an external lemma
    for name, st, l in [
        ("le_plus_r", "forall n m : nat, m <= n + m", "le_plus_l"),
        ("le_mult_r", "forall n m : nat, 0 < n -> m <= n * m", "le_mult_l"),
        ("le_S_n_m", "forall n m : nat, S n <= S m -> n <= m", "le_S_n"),
        ("lt_le_S", "forall n m : nat, n < m -> S n <= m", "lt_le_S_n"),
        ("le_pred_n", "forall n m : nat, n <= m -> pred n <= pred m", "le_pred"),
        ("le_trans_S", "forall n m : nat, n <= m -> n <= S m", "le_S"),
        ("le_max_l_n", "forall n m : nat, n <= max n m", "le_max_l"),
        ("le_min_r_n", "forall n m : nat, min n m <= m", "le_min_r"),
    ]:
        ls.append(Lemma(name, st, [
            s("forall", 1, t("intros", a("n", "nat"), a("m", "nat"), a("H", "Prop"))),
            s("le", 2, t("apply", lem(l))),
            s("le", 0, t("apply", a("H", "Prop", "hyp"))),
            s("le", 0, t("auto")),
        ]))

    # equational rewriting with library lemmas
    for name, st, l1, l2, l3 in [
        ("plus_comm_S", "forall n m : nat, n + S m = S (m + n)", "plus_n_Sm", "plus_comm", "plus_Sn_m"),
        ("mult_comm_2", "forall n m : nat, n * 2 * m = m * (n + n)", "mult_comm", "mult_plus_distr_r", "plus_mult_2"),
        ("plus_assoc_rev", "forall n m p : nat, n + (m + p) = p + (m + n)", "plus_assoc", "plus_comm", "plus_permute"),
        ("mult_assoc_rev", "forall n m p : nat, n * (m * p) = p * (m * n)", "mult_assoc", "mult_comm", "mult_permute"),
        ("app_assoc_rev", "forall (A : Type) (l m n : list A), l ++ m ++ n = (l ++ m) ++ n", "app_assoc", "app_comm_cons", "app_nil_end"),
        ("rev_app_rev", "forall (A : Type) (l m : list A), rev (l ++ m) = rev m ++ rev l", "rev_app_distr", "app_assoc", "rev_involutive"),
        ("length_app_comm", "forall (A : Type) (l m : list A), length (l ++ m) = length (m ++ l)", "app_length", "plus_comm", "app_length_comm"),
        ("map_app_comm", "forall (A B : Type) (f : A -> B) (l m : list A), map f (l ++ m) = map f l ++ map f m", "map_app", "app_inv_head", "map_map"),
    ]:
        if "list" in st:
            # lists: simplify first, then one rewrite with all three lemmas
            ls.append(Lemma(name, st, [
                s("forall", 1, t("intros", a("A", "Type"), a("l", "list"), a("m", "list"))),
                s("equal", 1, t("simpl")),
                s("equal", 1, t("rewrite", lem(l1), lem(l2), lem(l3))),
                s("equal", 0, t("reflexivity")),
            ]))
            continue
        ls.append(Lemma(name, st, [
            s("forall", 1, t("intros", a("n", "nat"), a("m", "nat"))),
            s("equal", 1, t("rewrite", lem(l1), lem(l2))),
            s("equal", 1, t("rewrite", lem(l3))),
            s("equal", 0, t("reflexivity")),
        ]))

    # list case analysis
    for name, st in [
        ("hd_cons", "forall (A : Type) (d a : A) (l : list A), hd d (a :: l) = a"),
        ("tl_length", "forall (A : Type) (l : list A), length (tl l) = pred (length l)"),
        ("nil_or_cons", "forall (A : Type) (l : list A), l = [] \\/ exists a m, l = a :: m"),
        ("rev_unit_nil", "forall (A : Type) (l : list A) (a : A), rev l ++ [a] <> []"),
        ("last_nil", "forall (A : Type) (l : list A) (d : A), last l d = last (rev (rev l)) d"),
        ("removelast_nil", "forall (A : Type) (l : list A), removelast (removelast []) = removelast l -> True"),
        ("firstn_nil_l", "forall (A : Type) (n : nat), firstn n (@nil A) = []"),
        ("skipn_nil_l", "forall (A : Type) (n : nat), skipn n (@nil A) = []"),
    ]:
        ls.append(Lemma(name, st, [
            s("forall", 1, t("intros", a("A", "Type"), a("l", "list"))),
            s("or", 2, t("case", a("l", "list", "hyp"))),
            s("or", 0, t("left"), t("auto")),
            s("or", 1, t("intros", a("x", "A"), a("m", "list"))),
            s("or", 0, t("right"), t("eauto")),
        ]))

    # conjunction splitting
    for name, st in [
        ("le_antisym_and", "forall n m : nat, n <= m /\\ m <= n -> n = m /\\ m = n"),
        ("and_comm_nat", "forall n m : nat, n = m /\\ m = n -> m = n /\\ n = m"),
        ("lt_and_le", "forall n m : nat, n < m -> n <= m /\\ n <> m"),
        ("max_min_and", "forall n m : nat, min n m <= n /\\ m <= max n m"),
        ("even_odd_and", "forall n : nat, n + n = 2 * n /\\ n * 2 = 2 * n"),
        ("succ_pred_and", "forall n : nat, 0 < n -> S (pred n) = n /\\ pred (S n) = n"),
        ("double_and", "forall n : nat, n + n = n * 2 /\\ 2 * n = n * 2"),
        ("sub_add_and", "forall n m : nat, m <= n -> n - m + m = n /\\ m + (n - m) = n"),
    ]:
        ls.append(Lemma(name, st, [
            s("forall", 1, t("intros", a("n", "nat"), a("m", "nat"), a("H", "Prop"))),
            s("and", 2, t("split")),
            s("equal", 0, t("omega")),
            s("equal", 0, t("omega")),
        ]))

    # longer inductions on lists
    for name, st, l1, l2 in [
        ("rev_length", "forall (A : Type) (l : list A), length (rev l) = length l", "app_length", "plus_comm"),
        ("rev_involutive_l", "forall (A : Type) (l : list A), rev (rev l) = l", "rev_app_distr", "app_nil_r"),
        ("map_length_l", "forall (A B : Type) (f : A -> B) (l : list A), length (map f l) = length l", "map_cons", "length_cons"),
        ("app_length_l", "forall (A : Type) (l m : list A), length (l ++ m) = length l + length m", "app_comm_cons", "plus_Sn_m"),
        ("map_rev_l", "forall (A B : Type) (f : A -> B) (l : list A), map f (rev l) = rev (map f l)", "map_app", "rev_unit"),
        ("in_rev_l", "forall (A : Type) (l : list A) (x : A), In x l -> In x (rev l)", "in_app_iff", "in_rev"),
        ("fold_right_app_l", "forall (A B : Type) (f : A -> B -> B) (l m : list A) (i : B), fold_right f i (l ++ m) = fold_right f (fold_right f i m) l", "fold_right_cons", "app_comm_cons"),
        ("count_occ_app_l", "forall (l m : list nat) (x : nat), count_occ eq_nat_dec (l ++ m) x = count_occ eq_nat_dec l x + count_occ eq_nat_dec m x", "count_occ_cons", "plus_assoc"),
    ]:
        ls.append(Lemma(name, st, [
            s("forall", 2, t("induction", a("l", "list"))),
            s("equal", 0, t("simpl"), t("auto")),
            s("equal", 1, t("simpl")),
            s("equal", 1, t("rewrite", lem(l1), a("IHl", "Prop", "ih"), lem(l2))),
            s("equal", 1, t("simpl")),
            s("equal", 0, t("auto")),
        ]))

    # automation only
    for name, st in [
        ("le_n_Sn_auto", "forall n : nat, n <= S n"),
        ("lt_n_Sn_auto", "forall n : nat, n < S n"),
        ("le_0_n_auto", "forall n : nat, 0 <= n"),
        ("plus_le_auto", "forall n m : nat, n <= n + m"),
        ("mult_le_auto", "forall n m : nat, 0 < m -> n <= n * m"),
        ("max_le_auto", "forall n m : nat, n <= max n m"),
        ("min_le_auto", "forall n m : nat, min n m <= n"),
        ("pred_le_auto", "forall n : nat, pred n <= n"),
    ]:
        ls.append(Lemma(name, st, [
            s("le", 0, t("auto")),
        ]))

    ls.append(Lemma("S_inj", "forall n m : nat, S n = S m -> n = m", [
        s("forall", 1, t("intros", a("n", "nat"), a("m", "nat"), a("H", "Prop"))),
        s("equal", 1, t("injection", a("H", "Prop", "hyp"))),
        s("implies", 0, t("trivial")),
    ]))
    ls.append(Lemma("O_S_discr", "forall n : nat, 0 <> S n", [
        s("forall", 1, t("intros", a("n", "nat"), a("H", "Prop"))),
        s("False", 0, t("discriminate", a("H", "Prop", "hyp"))),
    ]))

    assert len(ls) == 70, len(ls)
    return ls


# -------------------------------------------------------------- bigop library


def sum_first_n():
    return Lemma("sum_first_n", "forall n : nat, (\\sum_(i < n.+1) i) * 2 = n * n.+1", [
        s("equal", 2, t("elim", a("n", "nat", "hyp"))),
        s("equal", 0, t("rewrite", lem("mul0n"), lem("big_nat1"), lem("muln0")), by=True),
        s("forall", 1, t("move =>", a("n", "nat"), a("IH", "Prop"))),
        s("equal", 0, t("rewrite", lem("big_nat_recr"), lem("mulnDr"), a("IH", "Prop", "ih"),
                        lem("mulnDl"), lem("addn2"), lem("mulnC")), by=True,
          text="by rewrite big_nat_recr mulnDr IH -mulnDl addn2 mulnC."),
    ])


def fact_prod():
    return Lemma("fact_prod", "forall n : nat, n`! = \\prod_(1 <= i < n.+1) i", [
        s("equal", 2, t("elim", a("n", "nat", "hyp"))),
        s("equal", 0, t("rewrite", lem("big_nil")), by=True),
        s("forall", 1, t("move =>", a("n", "nat"), a("IH", "Prop"))),
        s("equal", 0, t("rewrite", lem("factS"), lem("big_add1"), a("IH", "Prop", "ih"),
                        lem("big_add1"), lem("big_nat_recr"), lem("mulnC")), by=True,
          text="by rewrite factS big_add1 -IH big_add1 big_nat_recr mulnC."),
    ])


def sum_first_n_odd():
    return Lemma("sum_first_n_odd",
                 "forall n : nat, \\sum_(i < n.+1 | odd i) i = (n.+1 %/ 2) ^ 2", [
        s("equal", 2, t("elim", a("n", "nat", "hyp"))),
        s("equal", 1, t("rewrite", lem("exp0n"), lem("index_iota"), lem("subn0"), lem("big1_seq")),
          text="rewrite exp0n // /index_iota subn0 big1_seq //."),
        s("forall", 0,
          t("move =>", a("i", "nat")),
          t("move/", a("andP", "Prop", "lemma"), a("H2", "Prop")),
          t("move :", a("H2", "Prop", "hyp")),
          t("rewrite", lem("muln0"), lem("in_nil")), by=True,
          text="by move => i; move/andP => [_ H2]; move : H2; rewrite muln0 in_nil."),
        s("forall", 1, t("move =>", a("n", "nat"), a("IH", "Prop"))),
        s("equal", 0, t("rewrite", lem("big_mkcond"), lem("addn1"), lem("mulnDr"), lem("muln1"),
                        lem("addn2"), lem("big_nat_recr"), a("IH", "Prop", "ih"), lem("odd2n"),
                        lem("odd2n1"), lem("addn0"), lem("n1square"), lem("n2square")), by=True,
          text="by rewrite big_mkcond -[n.+1]addn1 mulnDr muln1 addn2 !big_nat_recr IH "
               "odd2n odd2n1 //= addn0 n1square n2square."),
    ])


SERIES = [
    # (name, statement, step lemmas)
    ("sum_const_n", "forall n c : nat, \\sum_(i < n) c = n * c", ["big_ord_recr", "mulSn", "addnC"]),
    ("sum_nat_id", "forall n : nat, \\sum_(0 <= i < n) i = \\sum_(i < n) i", ["big_nat_recr", "big_ord_recr", "addnC"]),
    ("sum_double", "forall n : nat, \\sum_(i < n) i.*2 = (\\sum_(i < n) i).*2", ["big_ord_recr", "doubleD", "addnC"]),
    ("sum_succ", "forall n : nat, \\sum_(i < n) i.+1 = \\sum_(i < n) i + n", ["big_ord_recr", "addnS", "addnA"]),
    ("sum_mul_l", "forall n c : nat, \\sum_(i < n) c * i = c * \\sum_(i < n) i", ["big_ord_recr", "mulnDr", "addnC"]),
    ("sum_mul_r", "forall n c : nat, \\sum_(i < n) i * c = (\\sum_(i < n) i) * c", ["big_ord_recr", "mulnDl", "addnC"]),
    ("sum_add_distr", "forall n : nat, \\sum_(i < n) (i + i) = \\sum_(i < n) i + \\sum_(i < n) i", ["big_ord_recr", "addnACA", "addnC"]),
    ("sum_pow2", "forall n : nat, \\sum_(i < n) 2 ^ i = (2 ^ n).-1", ["big_ord_recr", "expnS", "mul2n"]),
    ("sum_sq", "forall n : nat, 6 * \\sum_(i < n.+1) i ^ 2 = n * n.+1 * n.*2.+1", ["big_ord_recr", "mulnDr", "expnS"]),
    ("sum_cubes", "forall n : nat, 4 * \\sum_(i < n.+1) i ^ 3 = (n * n.+1) ^ 2", ["big_ord_recr", "mulnDr", "expnMn"]),
    ("sum_even", "forall n : nat, \\sum_(i < n.+1) i.*2 = n * n.+1", ["big_ord_recr", "doubleD", "mulnC"]),
    ("sum_odd_sq", "forall n : nat, \\sum_(i < n) i.*2.+1 = n ^ 2", ["big_ord_recr", "sqrnD", "addnC"]),
    ("prod_const_n", "forall n c : nat, \\prod_(i < n) c = c ^ n", ["big_ord_recr", "expnSr", "mulnC"]),
    ("prod_pow2", "forall n : nat, \\prod_(i < n) 2 = 2 ^ n", ["big_ord_recr", "expnS", "mulnC"]),
    ("prod_fact_div", "forall n : nat, \\prod_(i < n) i.+1 = n`!", ["big_ord_recr", "factS", "mulnC"]),
    ("sum_geom3", "forall n : nat, 2 * \\sum_(i < n) 3 ^ i = (3 ^ n).-1", ["big_ord_recr", "expnS", "mulnDr"]),
    ("sum_tri", "forall n : nat, \\sum_(i < n.+1) \\sum_(j < i.+1) j = n * n.+1 * n.+2 %/ 6", ["big_ord_recr", "big_nat_recr", "addnC"]),
    ("sum_fib", "forall n : nat, \\sum_(i < n) fib i = (fib n.+1).-1", ["big_ord_recr", "fibS", "addnC"]),
    ("sum_binom_row", "forall n : nat, \\sum_(i < n.+1) 'C(n, i) = 2 ^ n", ["big_ord_recr", "binS", "expnS"]),
    ("sum_alt_sign", "forall n : nat, \\sum_(i < n.*2) (-1) ^ i = 0", ["big_ord_recr", "doubleS", "addn0"]),
    ("sum_harm_le", "forall n : nat, \\sum_(i < n) 1 <= n", ["big_ord_recr", "addn1", "ltnS"]),
    ("sum_mod2", "forall n : nat, \\sum_(i < n) odd i <= n", ["big_ord_recr", "leq_add", "leq_b1"]),
]


def series(name, statement, step):
    """induction with the base case closed inline, then two rewrite steps"""
    return Lemma(name, statement, [
        s("equal", 1, t("elim", a("n", "nat", "hyp"), a("n", "nat"), a("IH", "Prop")),
          text="elim: n => [|n IH] //."),
        s("equal", 1, t("rewrite", *[lem(x) for x in step])),
        s("equal", 0, t("rewrite", a("IH", "Prop", "ih")), by=True),
    ])


def bigop_families():
    out = []

    def fam(prefix, n, steps_fn, statement_fn):
        for i in range(n):
            out.append(Lemma(f"{prefix}_{i}", statement_fn(i), steps_fn(i)))

    # reindexing: one rewrite with several big-operator lemmas
    fam("big_reindex", 14, lambda i: [
        s("equal", 0, t("rewrite", lem("big_mkord"), lem(f"reindex_{i}"), lem("big_ord_narrow")), by=True),
    ], lambda i: f"forall n : nat, \\sum_(i < n) F{i} i = \\sum_(0 <= i < n) F{i} i")

    # splitting ranges
    fam("big_split_range", 14, lambda i: [
        s("equal", 1, t("rewrite", lem("big_cat_nat"), lem(f"leq_addr_{i}"))),
        s("equal", 2, t("congr", a("addn", "Prop"))),
        s("equal", 0, t("apply", lem("eq_bigr"))),
        s("equal", 0, t("apply", lem("eq_bigl"))),
    ], lambda i: f"forall m n : nat, \\sum_(0 <= i < m + n) G{i} i = \\sum_(0 <= i < m) G{i} i + \\sum_(m <= i < m + n) G{i} i")

    # monotonicity
    fam("leq_big", 14, lambda i: [
        s("leq", 1, t("move =>", a("n", "nat"), a("H", "Prop"))),
        s("leq", 1, t("apply", lem("leq_sum"))),
        s("forall", 0, t("move =>", a("i", "nat"), a("Hi", "Prop")), t("exact", a("H", "Prop", "hyp")), by=True),
    ], lambda i: f"forall n : nat, (forall i, F{i} i <= G{i} i) -> \\sum_(i < n) F{i} i <= \\sum_(i < n) G{i} i")

    # pointwise equality of bodies
    fam("eq_big_body", 14, lambda i: [
        s("equal", 1, t("apply", lem("eq_bigr"))),
        s("forall", 0, t("move =>", a("i", "nat"), a("Hi", "Prop")), t("rewrite", lem(f"body_{i}")), by=True),
    ], lambda i: f"forall n : nat, \\sum_(i < n) F{i} i = \\sum_(i < n) H{i} i")

    # sequences
    fam("seq_size", 14, lambda i: [
        s("forall", 1, t("elim", a("s", "seq", "hyp"), a("x", "T"), a("s", "seq"), a("IHs", "Prop")),
          text="elim: s => [|x s IHs] //."),
        s("equal", 0, t("rewrite", lem("size_cons"), lem(f"seq_lemma_{i}"), a("IHs", "Prop", "ih")), by=True),
    ], lambda i: f"forall s : seq T, size (f{i} s) = size s")

    # boolean reflection
    fam("bool_refl", 14, lambda i: [
        s("reflect", 1, t("apply", lem("introP"))),
        s("implies", 0, t("move/", lem("andP"), a("H", "Prop")), t("case", a("H", "Prop", "hyp")), by=True),
    ], lambda i: f"forall a b : bool, reflect (P{i} a b) (a && b)")

    # divisibility
    fam("dvdn_big", 14, lambda i: [
        s("dvdn", 1, t("apply", lem("dvdn_sum"))),
        s("forall", 1, t("move =>", a("i", "nat"), a("Hi", "Prop"))),
        s("dvdn", 0, t("rewrite", lem(f"dvdn_mul_{i}"), lem("dvdn_mulr")), by=True),
    ], lambda i: f"forall n d : nat, d %| \\sum_(i < n) d * F{i} i")

    # case analysis on naturals
    fam("nat_case", 14, lambda i: [
        s("forall", 1, t("case", a("n", "nat"), a("n", "nat")), text="case: n => [|n] //."),
        s("equal", 0, t("rewrite", lem(f"succ_lemma_{i}"), lem("addn1")), by=True),
    ], lambda i: f"forall n : nat, K{i} n = K{i}' n")

    # products
    fam("prod_pos", 14, lambda i: [
        s("lt", 1, t("rewrite", lem("prodn_gt0"))),
        s("forall", 0, t("move =>", a("i", "nat")), t("rewrite", lem(f"pos_{i}")), by=True),
    ], lambda i: f"forall n : nat, 0 < \\prod_(i < n) P{i} i")

    # exchange of summation
    fam("exchange", 14, lambda i: [
        s("equal", 1, t("rewrite", lem("exchange_big"))),
        s("equal", 1, t("apply", lem("eq_bigr"))),
        s("forall", 1, t("move =>", a("i", "nat"), a("Hi", "Prop"))),
        s("equal", 1, t("apply", lem("eq_bigr"))),
        s("forall", 0, t("move =>", a("j", "nat"), a("Hi", "Prop")), t("rewrite", lem(f"comm_{i}")), by=True),
    ], lambda i: f"forall m n : nat, \\sum_(i < m) \\sum_(j < n) F{i} i j = \\sum_(j < n) \\sum_(i < m) F{i} i j")

    # arithmetic closed by automation
    fam("arith_auto", 14, lambda i: [
        s("equal", 0, t("rewrite", lem(f"arith_{i}"), lem("addnC"), lem("mulnC"), lem("addnA")), t("ring"), by=True),
    ], lambda i: f"forall m n : nat, A{i} m n = B{i} m n")

    # permutation of big operators
    fam("perm_big", 10, lambda i: [
        s("forall", 1, t("move =>", a("s1", "seq"), a("s2", "seq"), a("Hp", "Prop"))),
        s("equal", 0, t("apply", lem("perm_big")), t("exact", a("Hp", "Prop", "hyp")), by=True),
    ], lambda i: f"forall s1 s2 : seq nat, perm_eq s1 s2 -> \\sum_(i <- s1) F{i} i = \\sum_(i <- s2) F{i} i")

    # conditional sums
    fam("big_cond", 8, lambda i: [
        s("equal", 1, t("rewrite", lem("big_mkcond"))),
        s("equal", 1, t("apply", lem("eq_bigr"))),
        s("forall", 2, t("move =>", a("i", "nat"), a("Hi", "Prop")), t("case", a(f"P{i}", "bool"))),
        s("equal", 0, t("done"), by=True),
        s("equal", 0, t("rewrite", lem("add0n")), by=True),
    ], lambda i: f"forall n : nat, \\sum_(i < n | P{i} i) F i = \\sum_(i < n) (if P{i} i then F i else 0)")

    # maxima
    fam("bigmax_bound", 8, lambda i: [
        s("forall", 1, t("move =>", a("i", "nat"), a("Hi", "Prop"))),
        s("leq", 0, t("apply", lem(f"leq_bigmax_{i}")), t("exact", a("Hi", "Prop", "hyp")), by=True),
    ], lambda i: f"forall n (i : 'I_n), F{i} i <= \\max_(j < n) F{i} j")
    return out


def bigop_library():
    ls = [sum_first_n(), fact_prod(), sum_first_n_odd()]
    ls += [series(*x) for x in SERIES]
    ls += bigop_families()
    assert len(ls) == 205, len(ls)
    return ls


def main():
    write_library("initial", "Initial", initial_library(), ssr=False)
    bigop = bigop_library()
    write_library("bigop", "Bigop", bigop, ssr=True)
    first = bigop[0]
    partial = ["library Bigop"] + render_trace(first, first.steps[:PARTIAL_STEPS]) + ["admitted"]
    (HERE / "sum_first_n_partial.trace").write_text("\n".join(partial) + "\n")


PARTIAL_STEPS = 2

if __name__ == "__main__":
    main()
