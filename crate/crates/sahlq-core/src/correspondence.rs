//! Frame correspondence: the Gödel–McKinsey–Tarski (GMT) translation, the
//! standard translation into first-order logic, and computation of the
//! first-order correspondent of a Sahlqvist quasiequation by second-order
//! quantifier elimination (Ackermann's lemma).
//!
//! The contract of [`correspondent`] is semantic: for every finite poset
//! `X`, `X ⊨ tr(Φ)` iff the upset algebra of `X` validates `Φ`. The output
//! syntax is deterministic but only pinned up to logical equivalence, which
//! the model-checking oracle verifies over all small posets.

use crate::algebra::FinitePoset;
use crate::fomodel::FoFormula;
use crate::syntax::{is_negative, is_positive, Formula, Quasiequation};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error("input is not a Sahlqvist quasiequation")]
    NotSahlqvist,
    #[error("GMT translation expects a non-modal formula")]
    ModalInput,
    #[error("quantifier elimination got stuck on subformula {0:?}")]
    EliminationStuck(String),
}

// ---------------------------------------------------------------------------
// GMT translation
// ---------------------------------------------------------------------------

/// The GMT translation: `x ↦ □x`, `(φ→ψ) ↦ □(φ_g→ψ_g)`, `¬φ ↦ □¬φ_g`,
/// constants fixed, `∧`/`∨` pointwise.
pub fn gmt_translate(f: &Formula) -> Result<Formula, CorrespondenceError> {
    match f {
        Formula::Var(_) => Ok(Formula::box_(f.clone())),
        Formula::Const0 | Formula::Const1 => Ok(f.clone()),
        Formula::And(l, r) => Ok(Formula::and(gmt_translate(l)?, gmt_translate(r)?)),
        Formula::Or(l, r) => Ok(Formula::or(gmt_translate(l)?, gmt_translate(r)?)),
        Formula::Imp(l, r) => Ok(Formula::box_(Formula::imp(
            gmt_translate(l)?,
            gmt_translate(r)?,
        ))),
        Formula::Not(a) => Ok(Formula::box_(Formula::not(gmt_translate(a)?))),
        Formula::Box_(_) | Formula::Diamond(_) => Err(CorrespondenceError::ModalInput),
    }
}

/// GMT translation of a quasiequation, premise by premise. The result is
/// asserted (via the recognizer) to be a modal Sahlqvist quasiequation.
pub fn gmt_quasiequation(q: &Quasiequation) -> Result<Quasiequation, CorrespondenceError> {
    let premises = q
        .premises
        .iter()
        .map(gmt_translate)
        .collect::<Result<Vec<_>, _>>()?;
    let out = Quasiequation {
        premises,
        context_y: q.context_y.clone(),
        context_z: q.context_z.clone(),
    };
    if q.is_sahlqvist(false) && !out.is_sahlqvist(true) {
        // The translation of a Sahlqvist quasiequation is always modal
        // Sahlqvist; reaching this branch would be a recognizer bug.
        return Err(CorrespondenceError::NotSahlqvist);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Standard translation
// ---------------------------------------------------------------------------

fn pred_name(var: &str) -> String {
    format!("P{var}")
}

/// The standard translation of a modal formula at a world: atoms become
/// predicate applications, `□`/`◇` quantify over order successors, Boolean
/// connectives are pointwise. Bound world variables are drawn as `u0, u1, …`
/// from `counter`.
pub fn standard_translation(m: &Formula, world: &str, counter: &mut usize) -> FoFormula {
    match m {
        Formula::Var(x) => FoFormula::Pred(pred_name(x), world.to_string()),
        Formula::Const0 => FoFormula::False,
        Formula::Const1 => FoFormula::True,
        Formula::And(l, r) => FoFormula::and(vec![
            standard_translation(l, world, counter),
            standard_translation(r, world, counter),
        ]),
        Formula::Or(l, r) => FoFormula::or(vec![
            standard_translation(l, world, counter),
            standard_translation(r, world, counter),
        ]),
        Formula::Imp(l, r) => FoFormula::imp(
            standard_translation(l, world, counter),
            standard_translation(r, world, counter),
        ),
        Formula::Not(a) => FoFormula::not(standard_translation(a, world, counter)),
        Formula::Box_(a) => {
            let u = format!("u{counter}");
            *counter += 1;
            let body = standard_translation(a, &u, counter);
            FoFormula::forall(&u, FoFormula::imp(FoFormula::leq(world, &u), body))
        }
        Formula::Diamond(a) => {
            let u = format!("u{counter}");
            *counter += 1;
            let body = standard_translation(a, &u, counter);
            FoFormula::exists(&u, FoFormula::and(vec![FoFormula::leq(world, &u), body]))
        }
    }
}

// ---------------------------------------------------------------------------
// Correspondent computation
// ---------------------------------------------------------------------------

/// One branch of the refutation system: a set of order atoms between
/// (existential) worlds, solved box-atom constraints per propositional
/// variable, and residual translated conjuncts in which every predicate
/// variable occurs negatively.
#[derive(Debug, Clone, Default)]
struct Branch {
    worlds: Vec<String>,
    atoms: Vec<FoFormula>,
    /// var ↦ list of (world, box depth) solved constraints
    /// `∀u (world ≤ⁿ u → P(u))`.
    solved: BTreeMap<String, Vec<(String, usize)>>,
    residuals: Vec<FoFormula>,
}

impl Branch {
    fn merge(mut self, other: Branch) -> Branch {
        self.worlds.extend(other.worlds);
        self.atoms.extend(other.atoms);
        for (v, mut paths) in other.solved {
            self.solved.entry(v).or_default().append(&mut paths);
        }
        self.residuals.extend(other.residuals);
        self
    }
}

/// Cartesian merge of two branch sets (conjunctive combination).
fn product(a: Vec<Branch>, b: Vec<Branch>) -> Vec<Branch> {
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            out.push(x.clone().merge(y.clone()));
        }
    }
    out
}

struct Ctx {
    fresh: usize,
    st_counter: usize,
}

impl Ctx {
    fn fresh_world(&mut self) -> String {
        self.fresh += 1;
        format!("w{}", self.fresh)
    }
}

/// If `f` is a boxed atom `□ⁿ x`, return `(x, n)`.
fn as_boxed_atom(f: &Formula) -> Option<(&str, usize)> {
    match f {
        Formula::Var(x) => Some((x, 0)),
        Formula::Box_(a) => as_boxed_atom(a).map(|(x, n)| (x, n + 1)),
        _ => None,
    }
}

/// Branches under which `f` is true at `world`. Boxed atoms become solved
/// constraints; negative subformulas become residual conjuncts.
fn assert_at(f: &Formula, world: &str, ctx: &mut Ctx) -> Result<Vec<Branch>, CorrespondenceError> {
    if let Some((x, n)) = as_boxed_atom(f) {
        let mut b = Branch::default();
        b.solved.insert(x.to_string(), vec![(world.to_string(), n)]);
        return Ok(vec![b]);
    }
    match f {
        Formula::Const1 => Ok(vec![Branch::default()]),
        Formula::Const0 => Ok(vec![]),
        Formula::And(l, r) => Ok(product(assert_at(l, world, ctx)?, assert_at(r, world, ctx)?)),
        Formula::Or(l, r) => {
            let mut out = assert_at(l, world, ctx)?;
            out.extend(assert_at(r, world, ctx)?);
            Ok(out)
        }
        Formula::Diamond(a) => {
            let v = ctx.fresh_world();
            let step = FoFormula::leq(world, &v);
            let mut out = assert_at(a, &v, ctx)?;
            for b in &mut out {
                b.worlds.push(v.clone());
                b.atoms.push(step.clone());
            }
            Ok(out)
        }
        _ if is_negative(f) => {
            let mut b = Branch::default();
            b.residuals
                .push(standard_translation(f, world, &mut ctx.st_counter));
            Ok(vec![b])
        }
        _ => Err(CorrespondenceError::EliminationStuck(f.to_string())),
    }
}

/// Branches under which `f` is false at `world`.
fn refute_at(f: &Formula, world: &str, ctx: &mut Ctx) -> Result<Vec<Branch>, CorrespondenceError> {
    match f {
        Formula::Const0 => Ok(vec![Branch::default()]),
        Formula::Const1 => Ok(vec![]),
        Formula::Var(x) => {
            let mut b = Branch::default();
            b.residuals.push(FoFormula::not(FoFormula::Pred(
                pred_name(x),
                world.to_string(),
            )));
            Ok(vec![b])
        }
        Formula::And(l, r) => {
            let mut out = refute_at(l, world, ctx)?;
            out.extend(refute_at(r, world, ctx)?);
            Ok(out)
        }
        Formula::Or(l, r) => Ok(product(refute_at(l, world, ctx)?, refute_at(r, world, ctx)?)),
        Formula::Not(a) => assert_at(a, world, ctx),
        Formula::Imp(l, r) => Ok(product(assert_at(l, world, ctx)?, refute_at(r, world, ctx)?)),
        Formula::Box_(a) => {
            let v = ctx.fresh_world();
            let step = FoFormula::leq(world, &v);
            let mut out = refute_at(a, &v, ctx)?;
            for b in &mut out {
                b.worlds.push(v.clone());
                b.atoms.push(step.clone());
            }
            Ok(out)
        }
        _ if is_positive(f) => {
            let mut b = Branch::default();
            b.residuals.push(FoFormula::not(standard_translation(
                f,
                world,
                &mut ctx.st_counter,
            )));
            Ok(vec![b])
        }
        _ => Err(CorrespondenceError::EliminationStuck(f.to_string())),
    }
}

/// Replace every predicate application by the branch's minimal valuation:
/// the disjunction of the solved path conditions (`w = u` for depth 0,
/// `w ≤ u` for positive depth, since the accessibility relation is the
/// reflexive-transitive order itself), or `false` when no constraint was
/// collected.
fn substitute_minimal(
    f: &FoFormula,
    solved: &BTreeMap<String, Vec<(String, usize)>>,
) -> FoFormula {
    match f {
        FoFormula::Pred(p, u) => {
            let var = p.strip_prefix('P').unwrap_or(p);
            match solved.get(var) {
                None => FoFormula::False,
                Some(paths) => FoFormula::or(
                    paths
                        .iter()
                        .map(|(w, n)| {
                            if *n == 0 {
                                FoFormula::Eq(w.clone(), u.clone())
                            } else {
                                FoFormula::Leq(w.clone(), u.clone())
                            }
                        })
                        .collect(),
                ),
            }
        }
        FoFormula::True | FoFormula::False | FoFormula::Leq(..) | FoFormula::Eq(..) => f.clone(),
        FoFormula::Not(a) => FoFormula::not(substitute_minimal(a, solved)),
        FoFormula::And(fs) => {
            FoFormula::And(fs.iter().map(|g| substitute_minimal(g, solved)).collect())
        }
        FoFormula::Or(fs) => {
            FoFormula::Or(fs.iter().map(|g| substitute_minimal(g, solved)).collect())
        }
        FoFormula::Imp(a, b) => FoFormula::imp(
            substitute_minimal(a, solved),
            substitute_minimal(b, solved),
        ),
        FoFormula::Forall(v, a) => FoFormula::forall(v, substitute_minimal(a, solved)),
        FoFormula::Exists(v, a) => FoFormula::exists(v, substitute_minimal(a, solved)),
    }
}

fn negate(f: FoFormula) -> FoFormula {
    match f {
        FoFormula::Not(a) => *a,
        other => FoFormula::not(other),
    }
}

/// The first-order frame correspondent of a Sahlqvist quasiequation: a
/// predicate-variable-free sentence `σ` over `{≤, =}` such that a finite
/// poset satisfies `σ` exactly when its upset algebra validates `Φ`.
///
/// Pipeline: take the disjunction of the premises, translate by GMT, negate
/// the standard translation at a generic world, decompose into branching
/// refutation systems whose box atoms surface as solved constraints, and
/// eliminate all predicate variables jointly by Ackermann's lemma
/// (substituting each minimal valuation); negating back and simplifying
/// yields the sentence.
pub fn correspondent(q: &Quasiequation) -> Result<FoFormula, CorrespondenceError> {
    if !q.is_sahlqvist(false) {
        return Err(CorrespondenceError::NotSahlqvist);
    }
    let mut ctx = Ctx {
        fresh: 0,
        st_counter: 0,
    };
    let root = "x0";
    // Conjunction over premises of their refutation branch sets.
    let mut combined = vec![Branch::default()];
    for p in &q.premises {
        let g = gmt_translate(p)?;
        combined = product(combined, refute_at(&g, root, &mut ctx)?);
    }
    // Per combined branch: joint Ackermann substitution, then negate the
    // branch into a universal implication.
    let mut clauses = Vec::new();
    for b in combined {
        let residuals: Vec<FoFormula> = b
            .residuals
            .iter()
            .map(|r| substitute_minimal(r, &b.solved))
            .collect();
        let body = FoFormula::imp(
            FoFormula::and(b.atoms.clone()),
            FoFormula::or(residuals.into_iter().map(negate).collect()),
        );
        let mut clause = body;
        for w in b.worlds.iter().rev() {
            clause = FoFormula::forall(w, clause);
        }
        clauses.push(clause);
    }
    let sentence = FoFormula::forall(root, FoFormula::and(clauses));
    let simplified = simplify_fo(&sentence);
    debug_assert!(simplified.is_predicate_free());
    Ok(simplified)
}

// ---------------------------------------------------------------------------
// Simplification
// ---------------------------------------------------------------------------

/// Equivalence-preserving cleanup of a predicate-variable-free sentence:
/// reflexivity absorption (`t ≤ t ↦ ⊤`), constant folding, flattening,
/// equality-witness substitution under quantifiers, and pruning of unused
/// quantifiers. Iterated to a fixpoint.
pub fn simplify_fo(sigma: &FoFormula) -> FoFormula {
    let mut cur = sigma.clone();
    for _ in 0..16 {
        let next = simplify_step(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn simplify_step(f: &FoFormula) -> FoFormula {
    match f {
        FoFormula::Leq(x, y) | FoFormula::Eq(x, y) if x == y => FoFormula::True,
        FoFormula::True | FoFormula::False | FoFormula::Leq(..) | FoFormula::Eq(..)
        | FoFormula::Pred(..) => f.clone(),
        FoFormula::Not(a) => match simplify_step(a) {
            FoFormula::True => FoFormula::False,
            FoFormula::False => FoFormula::True,
            FoFormula::Not(inner) => *inner,
            other => FoFormula::not(other),
        },
        FoFormula::And(fs) => {
            let mut flat = Vec::new();
            for g in fs {
                match simplify_step(g) {
                    FoFormula::And(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.dedup();
            FoFormula::and(flat)
        }
        FoFormula::Or(fs) => {
            let mut flat = Vec::new();
            for g in fs {
                match simplify_step(g) {
                    FoFormula::Or(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            flat.dedup();
            FoFormula::or(flat)
        }
        FoFormula::Imp(a, b) => match (simplify_step(a), simplify_step(b)) {
            (FoFormula::True, b) => b,
            (FoFormula::False, _) => FoFormula::True,
            (_, FoFormula::True) => FoFormula::True,
            (a, FoFormula::False) => negate(a),
            (a, b) if a == b => FoFormula::True,
            (a, b) => FoFormula::imp(a, b),
        },
        FoFormula::Forall(v, a) => {
            let body = simplify_step(a);
            if !body.free_variables().contains(v) {
                return body;
            }
            // ∀v (v = t ∧ … → c) collapses to the single instance v := t.
            if let FoFormula::Imp(ante, _) = &body {
                if let Some(t) = equality_binding(ante, v) {
                    return simplify_step(&substitute_var(&body, v, &t));
                }
            }
            match body {
                FoFormula::True => FoFormula::True,
                FoFormula::False => FoFormula::False,
                other => FoFormula::forall(v, other),
            }
        }
        FoFormula::Exists(v, a) => {
            let body = simplify_step(a);
            if !body.free_variables().contains(v) {
                return body;
            }
            // ∃v (v = t ∧ …) collapses to the instance v := t.
            if let Some(t) = equality_binding(&body, v) {
                return simplify_step(&substitute_var(&body, v, &t));
            }
            // Witness search: if some term already free in the body makes it
            // trivially true, the quantifier is redundant.
            for t in body.free_variables() {
                if t != *v && simplify_step(&substitute_var(&body, v, &t)) == FoFormula::True {
                    return FoFormula::True;
                }
            }
            match body {
                FoFormula::True => FoFormula::True,
                FoFormula::False => FoFormula::False,
                other => FoFormula::exists(v, other),
            }
        }
    }
}

/// If `f` (or one of its top-level conjuncts) is `v = t` or `t = v` with
/// `t ≠ v`, return `t`.
fn equality_binding(f: &FoFormula, v: &str) -> Option<String> {
    match f {
        FoFormula::Eq(a, b) if a == v && b != v => Some(b.clone()),
        FoFormula::Eq(a, b) if b == v && a != v => Some(a.clone()),
        FoFormula::And(fs) => fs.iter().find_map(|g| equality_binding(g, v)),
        _ => None,
    }
}

fn substitute_var(f: &FoFormula, v: &str, t: &str) -> FoFormula {
    let s = |x: &String| if x == v { t.to_string() } else { x.clone() };
    match f {
        FoFormula::True | FoFormula::False => f.clone(),
        FoFormula::Leq(a, b) => FoFormula::Leq(s(a), s(b)),
        FoFormula::Eq(a, b) => FoFormula::Eq(s(a), s(b)),
        FoFormula::Pred(p, a) => FoFormula::Pred(p.clone(), s(a)),
        FoFormula::Not(a) => FoFormula::not(substitute_var(a, v, t)),
        FoFormula::And(fs) => {
            FoFormula::And(fs.iter().map(|g| substitute_var(g, v, t)).collect())
        }
        FoFormula::Or(fs) => FoFormula::Or(fs.iter().map(|g| substitute_var(g, v, t)).collect()),
        FoFormula::Imp(a, b) => {
            FoFormula::imp(substitute_var(a, v, t), substitute_var(b, v, t))
        }
        FoFormula::Forall(u, a) if u != v => FoFormula::forall(u, substitute_var(a, v, t)),
        FoFormula::Exists(u, a) if u != v => FoFormula::exists(u, substitute_var(a, v, t)),
        FoFormula::Forall(..) | FoFormula::Exists(..) => f.clone(),
    }
}

// ---------------------------------------------------------------------------
// Complex-algebra evaluation (GMT soundness oracle)
// ---------------------------------------------------------------------------

/// Evaluate a modal formula in the powerset modal algebra of `x` with the
/// accessibility relation taken to be `≤`; subsets are bitsets and
/// `□Y = {w : ↑w ⊆ Y}`.
pub fn eval_modal_powerset(
    x: &FinitePoset,
    f: &Formula,
    valuation: &BTreeMap<String, u64>,
) -> u64 {
    let n = x.size();
    let full: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
    match f {
        Formula::Var(v) => *valuation.get(v).expect("valuation covers all variables"),
        Formula::Const0 => 0,
        Formula::Const1 => full,
        Formula::And(l, r) => {
            eval_modal_powerset(x, l, valuation) & eval_modal_powerset(x, r, valuation)
        }
        Formula::Or(l, r) => {
            eval_modal_powerset(x, l, valuation) | eval_modal_powerset(x, r, valuation)
        }
        Formula::Imp(l, r) => {
            (full & !eval_modal_powerset(x, l, valuation)) | eval_modal_powerset(x, r, valuation)
        }
        Formula::Not(a) => full & !eval_modal_powerset(x, a, valuation),
        Formula::Box_(a) => {
            let y = eval_modal_powerset(x, a, valuation);
            let mut out = 0u64;
            for w in 0..n {
                if x.upset_of(w) & !y == 0 {
                    out |= 1 << w;
                }
            }
            out
        }
        Formula::Diamond(a) => {
            let y = eval_modal_powerset(x, a, valuation);
            let mut out = 0u64;
            for w in 0..n {
                if x.upset_of(w) & y != 0 {
                    out |= 1 << w;
                }
            }
            out
        }
    }
}

/// True iff the modal formula holds at every world under every valuation of
/// its variables into subsets of `x`.
pub fn validates_modal_powerset(x: &FinitePoset, f: &Formula) -> bool {
    let n = x.size();
    let full: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
    let vars = f.variables();
    let mut valuation = BTreeMap::new();
    fn go(
        x: &FinitePoset,
        f: &Formula,
        vars: &[String],
        valuation: &mut BTreeMap<String, u64>,
        full: u64,
    ) -> bool {
        match vars.split_first() {
            None => eval_modal_powerset(x, f, valuation) == full,
            Some((v, rest)) => {
                for set in 0..=full {
                    valuation.insert(v.clone(), set);
                    if !go(x, f, rest, valuation, full) {
                        return false;
                    }
                }
                valuation.remove(v);
                true
            }
        }
    }
    go(x, f, &vars, &mut valuation, full)
}

// ---------------------------------------------------------------------------
// Named frame conditions
// ---------------------------------------------------------------------------

/// Discreteness: `∀x∀y (x ≤ y → x = y)`.
pub fn discreteness() -> FoFormula {
    FoFormula::forall(
        "x",
        FoFormula::forall(
            "y",
            FoFormula::imp(FoFormula::leq("x", "y"), FoFormula::eq("x", "y")),
        ),
    )
}

/// Root system: every principal upset is a chain,
/// `∀x∀y∀z (x ≤ y ∧ x ≤ z → y ≤ z ∨ z ≤ y)`.
pub fn root_system() -> FoFormula {
    FoFormula::forall(
        "x",
        FoFormula::forall(
            "y",
            FoFormula::forall(
                "z",
                FoFormula::imp(
                    FoFormula::and(vec![FoFormula::leq("x", "y"), FoFormula::leq("x", "z")]),
                    FoFormula::or(vec![FoFormula::leq("y", "z"), FoFormula::leq("z", "y")]),
                ),
            ),
        ),
    )
}

/// Up-directedness of principal upsets:
/// `∀x∀y∀z (x ≤ y ∧ x ≤ z → ∃w (y ≤ w ∧ z ≤ w))`.
pub fn principal_up_directed() -> FoFormula {
    FoFormula::forall(
        "x",
        FoFormula::forall(
            "y",
            FoFormula::forall(
                "z",
                FoFormula::imp(
                    FoFormula::and(vec![FoFormula::leq("x", "y"), FoFormula::leq("x", "z")]),
                    FoFormula::exists(
                        "w",
                        FoFormula::and(vec![FoFormula::leq("y", "w"), FoFormula::leq("z", "w")]),
                    ),
                ),
            ),
        ),
    )
}

/// Bounded top width `n`: among any `n+1` points of a principal upset `↑x`,
/// there are `n` points of `↑x` such that each of the former lies below one
/// of the latter.
pub fn btw_condition(n: usize) -> FoFormula {
    assert!(n >= 1);
    let ys: Vec<String> = (1..=n + 1).map(|i| format!("y{i}")).collect();
    let zs: Vec<String> = (1..=n).map(|i| format!("z{i}")).collect();
    let mut ante: Vec<FoFormula> = ys.iter().map(|y| FoFormula::leq("x", y)).collect();
    let zcond: Vec<FoFormula> = zs.iter().map(|z| FoFormula::leq("x", z)).collect();
    let cover: Vec<FoFormula> = ys
        .iter()
        .map(|y| FoFormula::or(zs.iter().map(|z| FoFormula::leq(y, z)).collect()))
        .collect();
    let mut body = FoFormula::and(zcond.into_iter().chain(cover).collect());
    for z in zs.iter().rev() {
        body = FoFormula::exists(z, body);
    }
    ante.reverse();
    let mut out = FoFormula::imp(FoFormula::and(ante.into_iter().rev().collect()), body);
    for y in ys.iter().rev() {
        out = FoFormula::forall(y, out);
    }
    FoFormula::forall("x", out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{up_algebra, v_poset, Language};
    use crate::fomodel::{check_fo, enumerate_posets, fo_equivalent, EnumerationConfig};
    use crate::syntax::{
        btw, btw_quasiequation, excluded_middle, excluded_middle_quasiequation, goedel_dummett,
        goedel_dummett_quasiequation, parse_formula, weml, weml_quasiequation,
    };

    #[test]
    fn gmt_clauses() {
        let em = excluded_middle();
        let g = gmt_translate(&em).unwrap();
        assert_eq!(g, parse_formula("[]x1 | []~[]x1", true).unwrap());
        assert_eq!(gmt_translate(&Formula::Const1).unwrap(), Formula::Const1);
        let imp = parse_formula("x1 -> x2", false).unwrap();
        assert_eq!(
            gmt_translate(&imp).unwrap(),
            parse_formula("[]([]x1 -> []x2)", true).unwrap()
        );
        assert_eq!(
            gmt_translate(&parse_formula("[]x1", true).unwrap()),
            Err(CorrespondenceError::ModalInput)
        );
    }

    #[test]
    fn gmt_quasiequation_stays_sahlqvist() {
        for q in [
            excluded_middle_quasiequation(),
            goedel_dummett_quasiequation(),
            weml_quasiequation(),
            btw_quasiequation(1),
            btw_quasiequation(2),
        ] {
            let g = gmt_quasiequation(&q).unwrap();
            assert!(g.is_sahlqvist(true), "GMT of {} not Sahlqvist", q.display());
        }
    }

    #[test]
    fn standard_translation_clauses() {
        let mut c = 0;
        let st = standard_translation(&parse_formula("[]x1", true).unwrap(), "w", &mut c);
        assert_eq!(
            st,
            FoFormula::forall(
                "u0",
                FoFormula::imp(
                    FoFormula::leq("w", "u0"),
                    FoFormula::Pred("Px1".into(), "u0".into())
                )
            )
        );
        let mut c = 0;
        let st = standard_translation(&Formula::var("x1"), "w", &mut c);
        assert_eq!(st, FoFormula::Pred("Px1".into(), "w".into()));
        let mut c = 0;
        let st = standard_translation(&parse_formula("<>(x1 & x2)", true).unwrap(), "w", &mut c);
        assert_eq!(
            st,
            FoFormula::exists(
                "u0",
                FoFormula::and(vec![
                    FoFormula::leq("w", "u0"),
                    FoFormula::Pred("Px1".into(), "u0".into()),
                    FoFormula::Pred("Px2".into(), "u0".into()),
                ])
            )
        );
    }

    #[test]
    fn gmt_soundness_small_scale() {
        let corpus = [
            excluded_middle(),
            goedel_dummett(),
            weml(),
            btw(1),
            btw(2),
        ];
        for x in enumerate_posets(&EnumerationConfig::posets(3)) {
            let up = up_algebra(&x, Language::full());
            for f in &corpus {
                let lhs = up.validates_formula(f).unwrap();
                let rhs = validates_modal_powerset(&x, &gmt_translate(f).unwrap());
                assert_eq!(lhs, rhs, "GMT mismatch on {f} over {:?}", x.to_json());
            }
        }
    }

    #[test]
    fn em_correspondent_is_discreteness() {
        let tr = correspondent(&excluded_middle_quasiequation()).unwrap();
        assert!(tr.is_predicate_free());
        assert_eq!(fo_equivalent(&tr, &discreteness(), 5), Ok(true));
        assert!(tr.quantifier_count() <= 3);
    }

    #[test]
    fn gd_correspondent_is_root_system() {
        let tr = correspondent(&goedel_dummett_quasiequation()).unwrap();
        assert_eq!(fo_equivalent(&tr, &root_system(), 5), Ok(true));
    }

    #[test]
    fn weml_and_btw1_correspondents_are_up_directedness() {
        let weml_tr = correspondent(&weml_quasiequation()).unwrap();
        let btw1_tr = correspondent(&btw_quasiequation(1)).unwrap();
        assert_eq!(fo_equivalent(&weml_tr, &principal_up_directed(), 5), Ok(true));
        assert_eq!(fo_equivalent(&btw1_tr, &principal_up_directed(), 5), Ok(true));
        assert_eq!(fo_equivalent(&btw1_tr, &btw_condition(1), 5), Ok(true));
    }

    #[test]
    fn correspondents_match_upset_validity() {
        let corpus = [
            excluded_middle_quasiequation(),
            goedel_dummett_quasiequation(),
            weml_quasiequation(),
            btw_quasiequation(1),
        ];
        for q in &corpus {
            let tr = correspondent(q).unwrap();
            for x in enumerate_posets(&EnumerationConfig::posets(4)) {
                let lhs = check_fo(&x, &tr).unwrap();
                let rhs = up_algebra(&x, Language::full())
                    .validates_quasiequation(q)
                    .unwrap();
                assert_eq!(lhs, rhs, "mismatch for {} on {:?}", q.display(), x.to_json());
            }
        }
    }

    #[test]
    fn correspondent_is_deterministic() {
        let a = correspondent(&goedel_dummett_quasiequation()).unwrap();
        let b = correspondent(&goedel_dummett_quasiequation()).unwrap();
        assert_eq!(a.to_sexpr(), b.to_sexpr());
    }

    #[test]
    fn non_sahlqvist_is_rejected() {
        let peirce = parse_formula("~~x1 -> x1", false).unwrap();
        let q = crate::syntax::build_quasiequation(vec![peirce]);
        assert_eq!(correspondent(&q), Err(CorrespondenceError::NotSahlqvist));
    }

    #[test]
    fn simplifier_examples() {
        // ∀x (x ≤ x → A) loses the vacuous antecedent.
        let f = FoFormula::forall(
            "x",
            FoFormula::forall(
                "y",
                FoFormula::imp(FoFormula::leq("x", "x"), FoFormula::leq("x", "y")),
            ),
        );
        let s = simplify_fo(&f);
        assert_eq!(
            s,
            FoFormula::forall("x", FoFormula::forall("y", FoFormula::leq("x", "y")))
        );
        // ∃y (x ≤ y ∧ y ≤ x) is witnessed by y := x.
        let f = FoFormula::exists(
            "y",
            FoFormula::and(vec![FoFormula::leq("x", "y"), FoFormula::leq("y", "x")]),
        );
        assert_eq!(simplify_fo(&f), FoFormula::True);
    }

    #[test]
    fn btw_condition_sanity() {
        // A rooted 3-antichain has top width 3: btw(2) fails, btw(3) holds.
        let p = FinitePoset::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(check_fo(&p, &btw_condition(1)), Ok(false));
        assert_eq!(check_fo(&p, &btw_condition(2)), Ok(false));
        assert_eq!(check_fo(&p, &btw_condition(3)), Ok(true));
        // A rooted 2-antichain has top width 2.
        let q = v_poset();
        assert_eq!(check_fo(&q, &btw_condition(1)), Ok(false));
        assert_eq!(check_fo(&q, &btw_condition(2)), Ok(true));
    }
}
