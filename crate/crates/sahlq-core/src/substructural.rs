//! Finite FL_e algebras (commutative residuated lattices with a constant
//! `0`), the ILL witness families built on the definable falsum `⊥`, the
//! disjunctive characteristic formula of a Sahlqvist quasiequation,
//! congruence lattices and spectra, and the desk-scale check of the linear
//! correspondence: characteristic-formula validity against
//! `Spec(A) ⊨ tr(Φ)`.

use crate::algebra::{AlgebraError, ClassTag, FiniteAlgebra, FinitePoset};
use crate::correspondence::{correspondent, CorrespondenceError};
use crate::fomodel::{check_fo, enumerate_posets, EnumerationConfig, FoError};
use crate::syntax::{Formula, Quasiequation};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Largest carrier for congruence enumeration.
pub const CONGRUENCE_BOUND: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FleError {
    #[error("{law} fails at ({}, {}, {})", witness.0, witness.1, witness.2)]
    LawViolation {
        law: &'static str,
        witness: (usize, usize, usize),
    },
    #[error("carrier of size {size} exceeds the bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("connective {0} has no witness in this language")]
    NotCompatible(&'static str),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
    #[error(transparent)]
    Fo(#[from] FoError),
}

// ---------------------------------------------------------------------------
// Formulas in the language ∧, ∨, ·, →, 0, 1
// ---------------------------------------------------------------------------

/// A formula of intuitionistic linear logic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum IllFormula {
    Var(String),
    Zero,
    One,
    Meet(Box<IllFormula>, Box<IllFormula>),
    Join(Box<IllFormula>, Box<IllFormula>),
    Times(Box<IllFormula>, Box<IllFormula>),
    Imp(Box<IllFormula>, Box<IllFormula>),
}

impl IllFormula {
    pub fn var(name: &str) -> IllFormula {
        IllFormula::Var(name.to_string())
    }

    pub fn meet(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Join(Box::new(a), Box::new(b))
    }

    pub fn times(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Times(Box::new(a), Box::new(b))
    }

    pub fn imp(a: IllFormula, b: IllFormula) -> IllFormula {
        IllFormula::Imp(Box::new(a), Box::new(b))
    }

    /// `f^k` as a left-nested fusion; `k` must be positive.
    pub fn pow(f: IllFormula, k: usize) -> IllFormula {
        assert!(k >= 1);
        let mut out = f.clone();
        for _ in 1..k {
            out = IllFormula::times(out, f.clone());
        }
        out
    }

    /// Left-nested meet of a nonempty slice.
    pub fn meet_fold(items: &[IllFormula]) -> IllFormula {
        let mut it = items.iter().cloned();
        let first = it.next().expect("meet of a nonempty set");
        it.fold(first, IllFormula::meet)
    }

    pub fn variables(&self) -> Vec<String> {
        fn walk(f: &IllFormula, out: &mut Vec<String>) {
            match f {
                IllFormula::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                IllFormula::Zero | IllFormula::One => {}
                IllFormula::Meet(a, b)
                | IllFormula::Join(a, b)
                | IllFormula::Times(a, b)
                | IllFormula::Imp(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn prec(&self) -> u8 {
        match self {
            IllFormula::Imp(..) => 1,
            IllFormula::Join(..) => 2,
            IllFormula::Meet(..) => 3,
            IllFormula::Times(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut std::fmt::Formatter<'_>, min: u8) -> std::fmt::Result {
        let p = self.prec();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            IllFormula::Var(v) => write!(f, "{v}")?,
            IllFormula::Zero => write!(f, "0")?,
            IllFormula::One => write!(f, "1")?,
            IllFormula::Meet(a, b) => {
                a.fmt_prec(f, p)?;
                write!(f, " & ")?;
                b.fmt_prec(f, p + 1)?;
            }
            IllFormula::Join(a, b) => {
                a.fmt_prec(f, p)?;
                write!(f, " | ")?;
                b.fmt_prec(f, p + 1)?;
            }
            IllFormula::Times(a, b) => {
                a.fmt_prec(f, p)?;
                write!(f, " * ")?;
                b.fmt_prec(f, p + 1)?;
            }
            IllFormula::Imp(a, b) => {
                a.fmt_prec(f, p + 1)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, p)?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for IllFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// The definable falsum
/// `⊥ = 1 ∧ (1→0) ∧ (0→1) ∧ (1→(1→1)) ∧ ((1→1)→1)`.
pub fn bot_term() -> IllFormula {
    use IllFormula::{One, Zero};
    let conjuncts = [
        One,
        IllFormula::imp(One, Zero),
        IllFormula::imp(Zero, One),
        IllFormula::imp(One, IllFormula::imp(One, One)),
        IllFormula::imp(IllFormula::imp(One, One), One),
    ];
    IllFormula::meet_fold(&conjuncts)
}

// ---------------------------------------------------------------------------
// Finite FL_e algebras
// ---------------------------------------------------------------------------

/// A finite commutative FL-algebra: a lattice and a commutative monoid on
/// the same carrier, the monoid residuated by `→`, plus an arbitrary
/// constant `0`. Tables are `n × n` row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FLeAlgebra {
    n: usize,
    labels: Vec<String>,
    meet: Vec<usize>,
    join: Vec<usize>,
    times: Vec<usize>,
    imp: Vec<usize>,
    zero: usize,
    one: usize,
    poset: FinitePoset,
}

impl FLeAlgebra {
    pub fn new(
        labels: Vec<String>,
        meet: Vec<usize>,
        join: Vec<usize>,
        times: Vec<usize>,
        imp: Vec<usize>,
        zero: usize,
        one: usize,
    ) -> Result<FLeAlgebra, FleError> {
        let n = labels.len();
        if n == 0 || zero >= n || one >= n {
            return Err(FleError::BadInput("empty carrier or constant out of range".into()));
        }
        for t in [&meet, &join, &times, &imp] {
            if t.len() != n * n || t.iter().any(|&v| v >= n) {
                return Err(FleError::BadInput("malformed operation table".into()));
            }
        }
        let poset = FinitePoset::new(n, |a, b| meet[a * n + b] == a)?;
        Ok(FLeAlgebra {
            n,
            labels,
            meet,
            join,
            times,
            imp,
            zero,
            one,
            poset,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a * self.n + b] == a
    }

    pub fn meet_of(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join_of(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    pub fn times_of(&self, a: usize, b: usize) -> usize {
        self.times[a * self.n + b]
    }

    pub fn imp_of(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.n + b]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table = |t: &[usize]| -> serde_json::Value {
            (0..self.n)
                .map(|a| {
                    (0..self.n)
                        .map(|b| self.labels[t[a * self.n + b]].clone())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into()
        };
        serde_json::json!({
            "elements": self.labels,
            "meet": table(&self.meet),
            "join": table(&self.join),
            "times": table(&self.times),
            "imp": table(&self.imp),
            "zero": self.labels[self.zero],
            "one": self.labels[self.one],
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FLeAlgebra, FleError> {
        let bad = |m: &str| FleError::BadInput(m.to_string());
        let labels: Vec<String> = v
            .get("elements")
            .and_then(|e| e.as_array())
            .ok_or_else(|| bad("missing elements"))?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("bad label")))
            .collect::<Result<_, _>>()?;
        let index = |name: &str| -> Result<usize, FleError> {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| bad(&format!("unknown element {name}")))
        };
        let table = |key: &str| -> Result<Vec<usize>, FleError> {
            let rows = v
                .get(key)
                .and_then(|t| t.as_array())
                .ok_or_else(|| bad(&format!("missing table {key}")))?;
            let mut out = Vec::new();
            for row in rows {
                for cell in row.as_array().ok_or_else(|| bad("bad table row"))? {
                    out.push(index(cell.as_str().ok_or_else(|| bad("bad table cell"))?)?);
                }
            }
            Ok(out)
        };
        let constant = |key: &str| -> Result<usize, FleError> {
            index(
                v.get(key)
                    .and_then(|s| s.as_str())
                    .ok_or_else(|| bad(&format!("missing constant {key}")))?,
            )
        };
        FLeAlgebra::new(
            labels.clone(),
            table("meet")?,
            table("join")?,
            table("times")?,
            table("imp")?,
            constant("zero")?,
            constant("one")?,
        )
    }
}

/// Exhaustively check the lattice laws, the commutative-monoid laws, and
/// the residuation law `a·b ≤ c ⟺ a ≤ b → c`; the first failure is
/// reported with a witness triple.
pub fn fle_validate(a: &FLeAlgebra) -> Result<(), FleError> {
    let n = a.n;
    let fail = |law: &'static str, w: (usize, usize, usize)| {
        Err(FleError::LawViolation { law, witness: w })
    };
    for x in 0..n {
        if a.meet_of(x, x) != x {
            return fail("meet-idempotence", (x, x, x));
        }
        if a.join_of(x, x) != x {
            return fail("join-idempotence", (x, x, x));
        }
        if a.times_of(a.one, x) != x {
            return fail("monoid-unit", (a.one, x, x));
        }
        for y in 0..n {
            if a.meet_of(x, y) != a.meet_of(y, x) {
                return fail("meet-commutativity", (x, y, y));
            }
            if a.join_of(x, y) != a.join_of(y, x) {
                return fail("join-commutativity", (x, y, y));
            }
            if a.times_of(x, y) != a.times_of(y, x) {
                return fail("times-commutativity", (x, y, y));
            }
            if a.meet_of(x, a.join_of(x, y)) != x {
                return fail("absorption", (x, y, y));
            }
            if a.join_of(x, a.meet_of(x, y)) != x {
                return fail("absorption", (x, y, y));
            }
            for z in 0..n {
                if a.meet_of(a.meet_of(x, y), z) != a.meet_of(x, a.meet_of(y, z)) {
                    return fail("meet-associativity", (x, y, z));
                }
                if a.join_of(a.join_of(x, y), z) != a.join_of(x, a.join_of(y, z)) {
                    return fail("join-associativity", (x, y, z));
                }
                if a.times_of(a.times_of(x, y), z) != a.times_of(x, a.times_of(y, z)) {
                    return fail("times-associativity", (x, y, z));
                }
                if a.leq(a.times_of(x, y), z) != a.leq(x, a.imp_of(y, z)) {
                    return fail("residuation", (x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// Evaluate the displayed `⊥` term.
pub fn bot_element(a: &FLeAlgebra) -> usize {
    eval_ill(a, &bot_term(), &BTreeMap::new()).expect("closed term")
}

pub fn eval_ill(
    a: &FLeAlgebra,
    f: &IllFormula,
    env: &BTreeMap<String, usize>,
) -> Result<usize, FleError> {
    Ok(match f {
        IllFormula::Var(v) => *env
            .get(v)
            .ok_or_else(|| FleError::UnboundVariable(v.clone()))?,
        IllFormula::Zero => a.zero,
        IllFormula::One => a.one,
        IllFormula::Meet(x, y) => a.meet_of(eval_ill(a, x, env)?, eval_ill(a, y, env)?),
        IllFormula::Join(x, y) => a.join_of(eval_ill(a, x, env)?, eval_ill(a, y, env)?),
        IllFormula::Times(x, y) => a.times_of(eval_ill(a, x, env)?, eval_ill(a, y, env)?),
        IllFormula::Imp(x, y) => a.imp_of(eval_ill(a, x, env)?, eval_ill(a, y, env)?),
    })
}

/// Theoremhood under the algebraization set `τ = {x ≥ 1}`: the formula is
/// valid when every assignment evaluates to an element above `1`.
pub fn validates_ill(a: &FLeAlgebra, f: &IllFormula) -> Result<bool, FleError> {
    let vars = f.variables();
    let n = a.n;
    let total = n.checked_pow(vars.len() as u32).expect("assignment space");
    for code in 0..total {
        let mut c = code;
        let mut env = BTreeMap::new();
        for v in &vars {
            env.insert(v.clone(), c % n);
            c /= n;
        }
        if !a.leq(a.one, eval_ill(a, f, &env)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// ILL witness families and the characteristic formula
// ---------------------------------------------------------------------------

/// The ILL witness families at fusion power `k`:
/// `∼ₙ(x⃗) = {¬(1 ∧ x₁ ∧ ⋯ ∧ xₙ)ᵏ}` with `¬φ = φ → ⊥`,
/// `(x⃗) ⇒ (y⃗) = {(1 ∧ x₁ ∧ ⋯ ∧ xₙ)ᵏ → (y₁ ∧ ⋯ ∧ yₘ)}`, and
/// `(x⃗) ⋎ (y⃗) = {(1 ∧ x₁ ∧ ⋯ ∧ xₙ) ∨ (1 ∧ y₁ ∧ ⋯ ∧ yₘ)}`.
pub struct IllWitnesses {
    pub k: usize,
}

pub fn ill_witnesses(k: usize) -> IllWitnesses {
    assert!(k >= 1);
    IllWitnesses { k }
}

impl IllWitnesses {
    fn one_meet(args: &[IllFormula]) -> IllFormula {
        args.iter()
            .cloned()
            .fold(IllFormula::One, IllFormula::meet)
    }

    pub fn il(&self, args: &[IllFormula]) -> Vec<IllFormula> {
        let body = IllFormula::pow(Self::one_meet(args), self.k);
        vec![IllFormula::imp(body, bot_term())]
    }

    pub fn dt(&self, phis: &[IllFormula], psis: &[IllFormula]) -> Vec<IllFormula> {
        let body = IllFormula::pow(Self::one_meet(phis), self.k);
        vec![IllFormula::imp(body, IllFormula::meet_fold(psis))]
    }

    pub fn pc(&self, phis: &[IllFormula], psis: &[IllFormula]) -> Vec<IllFormula> {
        vec![IllFormula::join(
            Self::one_meet(phis),
            Self::one_meet(psis),
        )]
    }
}

/// The `φᵏ` doubling translation into the ILL language, mirroring the
/// recursion of the general construction with the ILL witness families.
pub fn ill_phi_k(f: &Formula, w: &IllWitnesses) -> Result<Vec<IllFormula>, FleError> {
    let anchor = f
        .variables()
        .first()
        .cloned()
        .unwrap_or_else(|| "x1".to_string());
    let anchor = IllFormula::Var(format!("{anchor}_1"));
    ill_phi_k_inner(f, w, &anchor)
}

fn ill_phi_k_inner(
    f: &Formula,
    w: &IllWitnesses,
    anchor: &IllFormula,
) -> Result<Vec<IllFormula>, FleError> {
    Ok(match f {
        Formula::Var(v) => (1..=w.k)
            .map(|j| IllFormula::Var(format!("{v}_{j}")))
            .collect(),
        Formula::Const1 => vec![IllFormula::imp(anchor.clone(), anchor.clone())],
        Formula::Const0 => {
            let mut out = vec![anchor.clone()];
            out.extend(w.il(std::slice::from_ref(anchor)));
            out
        }
        Formula::And(l, r) => {
            let mut out = ill_phi_k_inner(l, w, anchor)?;
            for f in ill_phi_k_inner(r, w, anchor)? {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
            out
        }
        Formula::Not(a) => w.il(&ill_phi_k_inner(a, w, anchor)?),
        Formula::Imp(l, r) => w.dt(
            &ill_phi_k_inner(l, w, anchor)?,
            &ill_phi_k_inner(r, w, anchor)?,
        ),
        Formula::Or(l, r) => w.pc(
            &ill_phi_k_inner(l, w, anchor)?,
            &ill_phi_k_inner(r, w, anchor)?,
        ),
        Formula::Box_(_) | Formula::Diamond(_) => {
            return Err(FleError::NotCompatible("[] / <>"))
        }
    })
}

/// The characteristic formula `(1 ∧ φ₁ᵏ) ∨ ⋯ ∨ (1 ∧ φₘᵏ)` of a Sahlqvist
/// quasiequation, each `φᵢᵏ` flattened to a single conjunction.
pub fn characteristic_formula_ill(
    q: &Quasiequation,
    k: usize,
) -> Result<IllFormula, FleError> {
    if q.premises.is_empty() {
        return Err(FleError::BadInput("quasiequation without premises".into()));
    }
    let w = ill_witnesses(k);
    let mut disjuncts = Vec::new();
    for p in &q.premises {
        let set = ill_phi_k(p, &w)?;
        disjuncts.push(IllFormula::meet(
            IllFormula::One,
            IllFormula::meet_fold(&set),
        ));
    }
    let mut it = disjuncts.into_iter();
    let first = it.next().expect("nonempty premises");
    Ok(it.fold(first, IllFormula::join))
}

// ---------------------------------------------------------------------------
// Congruences and spectra
// ---------------------------------------------------------------------------

/// All congruences of a finite FL_e algebra, each stored as a class-id
/// vector in restricted-growth form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceLattice {
    pub congruences: Vec<Vec<usize>>,
}

/// Canonical restricted-growth form of a partition given by class ids.
fn canonical_partition(part: &[usize]) -> Vec<usize> {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(part.len());
    for &c in part {
        let next = map.len();
        out.push(*map.entry(c).or_insert(next));
    }
    out
}

/// Intersection of two congruences (as relations).
pub fn meet_partition(p: &[usize], q: &[usize]) -> Vec<usize> {
    let combined: Vec<usize> = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| a * (q.iter().max().unwrap() + 1) + b)
        .collect();
    canonical_partition(&combined)
}

/// Transitive closure of the union of two congruences.
pub fn join_partition(p: &[usize], q: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut Vec<usize>, mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if p[i] == p[j] || q[i] == q[j] {
                let (a, b) = (find(&mut root, i), find(&mut root, j));
                root[a.max(b)] = a.min(b);
            }
        }
    }
    let ids: Vec<usize> = (0..n).map(|i| find(&mut root, i)).collect();
    canonical_partition(&ids)
}

/// True when `p` refines `q`, i.e. `p ⊆ q` as relations.
pub fn refines(p: &[usize], q: &[usize]) -> bool {
    let n = p.len();
    (0..n).all(|i| (0..n).all(|j| p[i] != p[j] || q[i] == q[j]))
}

fn is_congruence(a: &FLeAlgebra, part: &[usize]) -> bool {
    let n = a.n;
    let ops: [&Vec<usize>; 4] = [&a.meet, &a.join, &a.times, &a.imp];
    for x in 0..n {
        for y in x + 1..n {
            if part[x] != part[y] {
                continue;
            }
            for c in 0..n {
                for t in ops {
                    if part[t[x * n + c]] != part[t[y * n + c]]
                        || part[t[c * n + x]] != part[t[c * n + y]]
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All congruences by exhaustive partition search; carrier bound
/// [`CONGRUENCE_BOUND`].
pub fn congruences(a: &FLeAlgebra) -> Result<CongruenceLattice, FleError> {
    if a.n > CONGRUENCE_BOUND {
        return Err(FleError::BoundExceeded {
            size: a.n,
            bound: CONGRUENCE_BOUND,
        });
    }
    let mut out = Vec::new();
    let mut part = vec![0usize; a.n];
    fn rec(a: &FLeAlgebra, part: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == part.len() {
            if is_congruence(a, part) {
                out.push(part.clone());
            }
            return;
        }
        for c in 0..=max + 1 {
            part[i] = c;
            rec(a, part, i + 1, max.max(c), out);
        }
    }
    if a.n == 1 {
        out.push(vec![0]);
    } else {
        rec(a, &mut part, 1, 0, &mut out);
    }
    Ok(CongruenceLattice { congruences: out })
}

/// The spectrum: meet-irreducible proper congruences ordered by inclusion.
/// A proper congruence is meet-irreducible when it is not the intersection
/// of two strictly larger congruences.
pub fn spec_congruences(a: &FLeAlgebra) -> Result<FinitePoset, FleError> {
    let lat = congruences(a)?.congruences;
    let proper: Vec<&Vec<usize>> = lat
        .iter()
        .filter(|p| p.iter().copied().max().unwrap_or(0) >= 1)
        .collect();
    let mut mi: Vec<Vec<usize>> = Vec::new();
    'outer: for th in &proper {
        let above: Vec<&Vec<usize>> = lat
            .iter()
            .filter(|g| refines(th, g) && **g != **th)
            .collect();
        for (i, g) in above.iter().enumerate() {
            for h in &above[i + 1..] {
                if meet_partition(g, h) == ***th {
                    continue 'outer;
                }
            }
        }
        mi.push((**th).clone());
    }
    Ok(FinitePoset::new(mi.len(), |i, j| refines(&mi[i], &mi[j])).expect("inclusion order"))
}

// ---------------------------------------------------------------------------
// The linear correspondence check
// ---------------------------------------------------------------------------

/// Semantic compatibility of a quasiequation with the axiomatic extension
/// generated by a finite algebra, at witness power `k`.
///
/// `∨` and `∧` need nothing. `→` needs the deduction-theorem prerequisite
/// `(1 ∧ x)ᵏ → (1 ∧ x)ᵏ⁺¹`. `¬` and `0` need the inconsistency-lemma
/// prerequisites `⊥ᵏ → x` and `(1 ∧ ¬(x ∧ 1)ᵐ)^f(m) → ¬(1 ∧ x)ᵏ` for every
/// `m`; on a finite algebra powers of elements below `1` are decreasing, so
/// both `m` and `f(m)` stabilize by the carrier size and a single instance
/// decides the whole family.
pub fn ill_compatible(a: &FLeAlgebra, q: &Quasiequation, k: usize) -> Result<bool, FleError> {
    let conns: BTreeSet<&str> = q
        .premises
        .iter()
        .flat_map(|p| p.connectives())
        .collect();
    let x = IllFormula::var("x");
    let one_x = IllFormula::meet(IllFormula::One, x.clone());
    if conns.contains("->") {
        let dt_axiom = IllFormula::imp(
            IllFormula::pow(one_x.clone(), k),
            IllFormula::pow(one_x.clone(), k + 1),
        );
        if !validates_ill(a, &dt_axiom)? {
            return Ok(false);
        }
    }
    if conns.contains("~") || conns.contains("0") {
        let n = a.size();
        let explosion = IllFormula::imp(IllFormula::pow(bot_term(), k), x.clone());
        let neg_power = IllFormula::imp(
            IllFormula::pow(IllFormula::meet(x.clone(), IllFormula::One), n),
            bot_term(),
        );
        let stabilized = IllFormula::imp(
            IllFormula::pow(IllFormula::meet(IllFormula::One, neg_power), n),
            IllFormula::imp(IllFormula::pow(one_x, k), bot_term()),
        );
        if !validates_ill(a, &explosion)? || !validates_ill(a, &stabilized)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearReport {
    /// The characteristic formula is a theorem of the algebra.
    pub lhs: bool,
    /// The spectrum satisfies the correspondent.
    pub rhs: bool,
}

/// Evaluate both sides of the linear correspondence on one algebra. The
/// correspondence theorem quantifies over a whole variety, so only
/// `lhs ⟹ rhs` is asserted per instance by the suites.
pub fn check_linear_correspondence(
    a: &FLeAlgebra,
    q: &Quasiequation,
    k: usize,
) -> Result<LinearReport, FleError> {
    fle_validate(a)?;
    let lhs = validates_ill(a, &characteristic_formula_ill(q, k)?)?;
    let rhs = check_fo(&spec_congruences(a)?, &correspondent(q)?)?;
    Ok(LinearReport { lhs, rhs })
}

// ---------------------------------------------------------------------------
// Fixtures and enumeration
// ---------------------------------------------------------------------------

/// The `n`-element Gödel chain: `· = ∧ = min`, Gödel implication.
pub fn godel_chain(n: usize) -> FLeAlgebra {
    assert!(n >= 1);
    let labels = (0..n).map(|e| e.to_string()).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = a.min(b);
            join[a * n + b] = a.max(b);
            imp[a * n + b] = if a <= b { n - 1 } else { b };
        }
    }
    FLeAlgebra::new(labels, meet.clone(), join, meet, imp, 0, n - 1).expect("valid tables")
}

/// The four-element Łukasiewicz (MV) chain: `a · b = max(0, a + b − 3)`,
/// `a → b = min(3, 3 − a + b)`.
pub fn mv4() -> FLeAlgebra {
    let n = 4;
    let labels = (0..n).map(|e| e.to_string()).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut times = vec![0; n * n];
    let mut imp = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = a.min(b);
            join[a * n + b] = a.max(b);
            times[a * n + b] = (a + b).saturating_sub(3);
            imp[a * n + b] = (3 - a + b).min(3);
        }
    }
    FLeAlgebra::new(labels, meet, join, times, imp, 0, 3).expect("valid tables")
}

/// View a finite Heyting algebra as an FL_e algebra with `· = ∧`.
pub fn ha_as_fle(a: &FiniteAlgebra) -> Result<FLeAlgebra, FleError> {
    if !a.has_class(ClassTag::Ha) {
        return Err(FleError::BadInput("expected a Heyting algebra".into()));
    }
    let n = a.size();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut imp = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            meet[x * n + y] = a.meet_of(x, y);
            join[x * n + y] = a.join_of(x, y).expect("lattice");
            imp[x * n + y] = a.imp_of(x, y).expect("Heyting implication");
        }
    }
    FLeAlgebra::new(
        a.labels().to_vec(),
        meet.clone(),
        join,
        meet,
        imp,
        a.zero().expect("bounded"),
        a.one().expect("bounded"),
    )
}

/// A negative fixture: the four-element Gödel chain with the fusion entry
/// `1 · 2` rewired to `3`, which breaks associativity.
pub fn broken_assoc_fixture() -> FLeAlgebra {
    let g = godel_chain(4);
    let n = 4;
    let mut times = g.times.clone();
    times[6] = 3;
    times[9] = 3;
    FLeAlgebra::new(
        g.labels.clone(),
        g.meet.clone(),
        g.join.clone(),
        times,
        g.imp.clone(),
        0,
        n - 1,
    )
    .expect("tables well formed")
}

/// All FL_e algebras with at most `max_size` elements, one representative
/// per isomorphism class.
///
/// A residuated fusion preserves all joins, so it is determined by its
/// values on pairs of join irreducibles, and those values are monotone in
/// the pair order. The search therefore backtracks over monotone
/// assignments to join-irreducible pairs for each lattice and each choice
/// of unit, rebuilds the full table by join extension, and keeps the
/// candidates that pass the unit, associativity, and residuation checks;
/// the constant `0` then ranges over the carrier, with deduplication under
/// the lattice automorphisms.
pub fn enumerate_fle(max_size: usize) -> Vec<FLeAlgebra> {
    let mut out = Vec::new();
    for p in enumerate_posets(&EnumerationConfig::posets(max_size)) {
        let n = p.size();
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        let mut lattice = true;
        'tables: for a in 0..n {
            for b in 0..n {
                match (p.meet(a, b), p.join(a, b)) {
                    (Some(m), Some(j)) => {
                        meet[a * n + b] = m;
                        join[a * n + b] = j;
                    }
                    _ => {
                        lattice = false;
                        break 'tables;
                    }
                }
            }
        }
        if !lattice {
            continue;
        }
        let bot = p.bottom().expect("finite lattice has a bottom");
        let irr: Vec<usize> = (0..n)
            .filter(|&j| {
                j != bot
                    && !(0..n).any(|a| {
                        (0..n).any(|b| {
                            a != j && b != j && p.leq(a, j) && p.leq(b, j) && join[a * n + b] == j
                        })
                    })
            })
            .collect();
        let autos: Vec<Vec<usize>> = (0..n)
            .permutations(n)
            .filter(|perm| {
                (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == p.leq(perm[a], perm[b])))
            })
            .collect();
        let pairs: Vec<(usize, usize)> = (0..irr.len())
            .flat_map(|i| (i..irr.len()).map(move |j| (i, j)))
            .collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for one in 0..n {
            let mut vals = vec![usize::MAX; pairs.len()];
            search_fusion(
                &p, &meet, &join, &irr, &pairs, one, bot, 0, &mut vals, &autos, &mut seen,
                &mut out,
            );
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search_fusion(
    p: &FinitePoset,
    meet: &[usize],
    join: &[usize],
    irr: &[usize],
    pairs: &[(usize, usize)],
    one: usize,
    bot: usize,
    idx: usize,
    vals: &mut Vec<usize>,
    autos: &[Vec<usize>],
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<FLeAlgebra>,
) {
    let n = p.size();
    if idx == pairs.len() {
        finalize_fusion(p, meet, join, irr, pairs, one, bot, vals, autos, seen, out);
        return;
    }
    let (i, j) = pairs[idx];
    let (x, y) = (irr[i], irr[j]);
    'candidates: for v in 0..n {
        // Necessary unit bounds: a contributor to the unit row must stay
        // below its target irreducible; when the unit itself is join
        // irreducible the dominant contributor is pinned exactly.
        if p.leq(x, one) {
            if x == one {
                if v != y {
                    continue;
                }
            } else if !p.leq(v, y) {
                continue;
            }
        }
        if p.leq(y, one) {
            if y == one {
                if v != x {
                    continue;
                }
            } else if !p.leq(v, x) {
                continue;
            }
        }
        // Monotonicity in the pair order.
        for (t, &(i2, j2)) in pairs.iter().enumerate().take(idx) {
            let (x2, y2) = (irr[i2], irr[j2]);
            let below = (p.leq(x2, x) && p.leq(y2, y)) || (p.leq(y2, x) && p.leq(x2, y));
            let above = (p.leq(x, x2) && p.leq(y, y2)) || (p.leq(y, x2) && p.leq(x, y2));
            if (below && !p.leq(vals[t], v)) || (above && !p.leq(v, vals[t])) {
                continue 'candidates;
            }
        }
        vals[idx] = v;
        search_fusion(p, meet, join, irr, pairs, one, bot, idx + 1, vals, autos, seen, out);
    }
    vals[idx] = usize::MAX;
}

#[allow(clippy::too_many_arguments)]
fn finalize_fusion(
    p: &FinitePoset,
    meet: &[usize],
    join: &[usize],
    irr: &[usize],
    pairs: &[(usize, usize)],
    one: usize,
    bot: usize,
    vals: &[usize],
    autos: &[Vec<usize>],
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<FLeAlgebra>,
) {
    let n = p.size();
    let mut times = vec![bot; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut v = bot;
            for (t, &(i, j)) in pairs.iter().enumerate() {
                let (x, y) = (irr[i], irr[j]);
                if (p.leq(x, a) && p.leq(y, b)) || (p.leq(y, a) && p.leq(x, b)) {
                    v = join[v * n + vals[t]];
                }
            }
            times[a * n + b] = v;
        }
    }
    if (0..n).any(|a| times[one * n + a] != a) {
        return;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if times[times[a * n + b] * n + c] != times[a * n + times[b * n + c]] {
                    return;
                }
            }
        }
    }
    let mut imp = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut r = bot;
            for c in 0..n {
                if p.leq(times[a * n + c], b) {
                    r = join[r * n + c];
                }
            }
            if !p.leq(times[a * n + r], b) {
                return;
            }
            imp[a * n + b] = r;
        }
    }
    let labels: Vec<String> = (0..n).map(|e| format!("e{e}")).collect();
    for zero in 0..n {
        let mut best: Option<Vec<usize>> = None;
        for perm in autos {
            let mut code = vec![perm[one], perm[zero]];
            for a in 0..n {
                for b in 0..n {
                    let (pa, pb) = (
                        perm.iter().position(|&v| v == a).unwrap(),
                        perm.iter().position(|&v| v == b).unwrap(),
                    );
                    code.push(perm[times[pa * n + pb]]);
                }
            }
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
        if !seen.insert(best.expect("at least the identity automorphism")) {
            continue;
        }
        let alg = FLeAlgebra::new(
            labels.clone(),
            meet.to_vec(),
            join.to_vec(),
            times.clone(),
            imp.clone(),
            zero,
            one,
        )
        .expect("constructed tables are well formed");
        debug_assert!(fle_validate(&alg).is_ok());
        out.push(alg);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{up_algebra, v_poset, Language};
    use crate::metalogic::{characteristic_theorems_pc, ipc_profile};
    use crate::syntax::{
        build_quasiequation, btw_quasiequation, excluded_middle_quasiequation,
        goedel_dummett_quasiequation, weml_quasiequation,
    };

    fn up_v_fle() -> FLeAlgebra {
        ha_as_fle(&up_algebra(&v_poset(), Language::full())).unwrap()
    }

    #[test]
    fn fixtures_validate_and_bot_is_zero() {
        for a in [godel_chain(1), godel_chain(2), godel_chain(3), godel_chain(4)] {
            fle_validate(&a).unwrap();
            assert_eq!(bot_element(&a), a.zero());
        }
        fle_validate(&mv4()).unwrap();
        assert_eq!(bot_element(&mv4()), 0);
        fle_validate(&up_v_fle()).unwrap();
    }

    #[test]
    fn broken_associativity_is_reported() {
        let err = fle_validate(&broken_assoc_fixture()).unwrap_err();
        assert_eq!(
            err,
            FleError::LawViolation {
                law: "times-associativity",
                witness: (1, 1, 2)
            }
        );
    }

    #[test]
    fn fusion_is_monotone_on_validated_algebras() {
        for a in [godel_chain(4), mv4(), up_v_fle()] {
            let n = a.size();
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        if a.leq(y, z) {
                            assert!(a.leq(a.times_of(x, y), a.times_of(x, z)));
                            assert!(a.leq(a.times_of(y, x), a.times_of(z, x)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn witness_scheme_shapes() {
        let x1 = IllFormula::var("x1");
        let y1 = IllFormula::var("y1");
        let w1 = ill_witnesses(1);
        assert_eq!(
            w1.il(&[x1.clone()]),
            vec![IllFormula::imp(
                IllFormula::meet(IllFormula::One, x1.clone()),
                bot_term()
            )]
        );
        assert_eq!(
            w1.pc(&[x1.clone()], &[y1.clone()]),
            vec![IllFormula::join(
                IllFormula::meet(IllFormula::One, x1.clone()),
                IllFormula::meet(IllFormula::One, y1.clone())
            )]
        );
        let w2 = ill_witnesses(2);
        let base = IllFormula::meet(IllFormula::One, x1.clone());
        assert_eq!(
            w2.dt(&[x1.clone()], &[y1.clone()]),
            vec![IllFormula::imp(
                IllFormula::times(base.clone(), base),
                y1.clone()
            )]
        );
        assert_eq!(
            w2.dt(&[x1.clone()], &[y1.clone()])[0].to_string(),
            "(1 & x1) * (1 & x1) -> y1"
        );
    }

    #[test]
    fn ill_phi_k_examples() {
        let w1 = ill_witnesses(1);
        let not_x1 = crate::syntax::parse_formula("~x1", false).unwrap();
        assert_eq!(
            ill_phi_k(&not_x1, &w1).unwrap(),
            vec![IllFormula::imp(
                IllFormula::meet(IllFormula::One, IllFormula::var("x1_1")),
                bot_term()
            )]
        );
        let x1 = crate::syntax::parse_formula("x1", false).unwrap();
        assert_eq!(
            ill_phi_k(&x1, &ill_witnesses(2)).unwrap(),
            vec![IllFormula::var("x1_1"), IllFormula::var("x1_2")]
        );
    }

    #[test]
    fn characteristic_formula_shapes() {
        let f = characteristic_formula_ill(&goedel_dummett_quasiequation(), 1).unwrap();
        let mk = |a: &str, b: &str| {
            IllFormula::meet(
                IllFormula::One,
                IllFormula::imp(
                    IllFormula::meet(IllFormula::One, IllFormula::var(a)),
                    IllFormula::var(b),
                ),
            )
        };
        assert_eq!(f, IllFormula::join(mk("x1_1", "x2_1"), mk("x2_1", "x1_1")));
        // A quasiequation with the single premise 1 is a theorem everywhere.
        let trivial = build_quasiequation(vec![Formula::Const1]);
        let f = characteristic_formula_ill(&trivial, 1).unwrap();
        for a in [godel_chain(3), mv4(), up_v_fle()] {
            assert!(validates_ill(&a, &f).unwrap());
        }
    }

    #[test]
    fn congruence_fixtures() {
        let g3 = congruences(&godel_chain(3)).unwrap().congruences;
        assert_eq!(g3.len(), 3);
        assert!(g3.contains(&vec![0, 1, 2]));
        assert!(g3.contains(&vec![0, 1, 1]));
        assert!(g3.contains(&vec![0, 0, 0]));
        // Finite MV chains are simple.
        assert_eq!(congruences(&mv4()).unwrap().congruences.len(), 2);
        let spec = spec_congruences(&godel_chain(3)).unwrap();
        assert_eq!(spec.size(), 2);
        assert!(spec.leq(0, 1) != spec.leq(1, 0), "2-chain spectrum");
        assert_eq!(spec_congruences(&godel_chain(2)).unwrap().size(), 1);
        // Product of two 2-chains, reached as Up of the 2-antichain.
        let two = FinitePoset::from_pairs(2, &[]).unwrap();
        let prod = ha_as_fle(&up_algebra(&two, Language::full())).unwrap();
        let spec = spec_congruences(&prod).unwrap();
        assert_eq!(spec.size(), 2);
        assert!(!spec.leq(0, 1) && !spec.leq(1, 0));
    }

    #[test]
    fn congruence_lattice_is_closed() {
        for a in [godel_chain(4), up_v_fle()] {
            let lat = congruences(&a).unwrap().congruences;
            for p in &lat {
                for q in &lat {
                    assert!(lat.contains(&meet_partition(p, q)));
                    assert!(lat.contains(&join_partition(p, q)));
                }
            }
        }
    }

    #[test]
    fn spec_matches_dual_of_heyting_reduct() {
        for (ha, fle) in [
            (crate::algebra::chain(4), ha_as_fle(&crate::algebra::chain(4)).unwrap()),
            (up_algebra(&v_poset(), Language::full()), up_v_fle()),
        ] {
            let by_cong = spec_congruences(&fle).unwrap();
            let by_filters = crate::metalogic::spec_ipc(&ha).unwrap();
            assert_eq!(
                crate::fomodel::canonical_form(&by_cong),
                crate::fomodel::canonical_form(&by_filters)
            );
        }
    }

    #[test]
    fn compatibility_prerequisites() {
        let em = excluded_middle_quasiequation();
        let gd = goedel_dummett_quasiequation();
        assert!(ill_compatible(&godel_chain(3), &em, 1).unwrap());
        assert!(ill_compatible(&godel_chain(3), &gd, 1).unwrap());
        // On the Łukasiewicz chain the negation witnesses only work once
        // the fusion power collapses every intermediate element to ⊥.
        assert!(!ill_compatible(&mv4(), &em, 1).unwrap());
        assert!(ill_compatible(&mv4(), &em, 3).unwrap());
        // Łukasiewicz logic lacks the plain deduction theorem at k = 1.
        assert!(!ill_compatible(&mv4(), &gd, 1).unwrap());
        // Gödel chain with the constant 0 rewired to the middle element:
        // ⊥ is no longer the lattice bottom, so the inconsistency lemma
        // prerequisites fail and ¬ is unavailable.
        let g = godel_chain(3);
        let skewed = FLeAlgebra::new(
            g.labels().to_vec(),
            (0..9).map(|i| g.meet_of(i / 3, i % 3)).collect(),
            (0..9).map(|i| g.join_of(i / 3, i % 3)).collect(),
            (0..9).map(|i| g.times_of(i / 3, i % 3)).collect(),
            (0..9).map(|i| g.imp_of(i / 3, i % 3)).collect(),
            1,
            2,
        )
        .unwrap();
        fle_validate(&skewed).unwrap();
        assert!(!ill_compatible(&skewed, &em, 1).unwrap());
        assert!(ill_compatible(&skewed, &gd, 1).unwrap());
    }

    #[test]
    fn linear_reports_on_fixtures() {
        let gd = goedel_dummett_quasiequation();
        let r = check_linear_correspondence(&godel_chain(3), &gd, 1).unwrap();
        assert!(r.lhs && r.rhs);
        // Up(V) has the V poset as spectrum, which is not a root system.
        let r = check_linear_correspondence(&up_v_fle(), &gd, 1).unwrap();
        assert!(!r.lhs && !r.rhs);
        let r = check_linear_correspondence(&godel_chain(1), &gd, 1).unwrap();
        assert!(r.lhs && r.rhs);
    }

    #[test]
    fn enumeration_small_counts_and_soundness() {
        let algs = enumerate_fle(4);
        for a in &algs {
            fle_validate(a).unwrap();
        }
        let by_size = |k: usize| algs.iter().filter(|a| a.size() == k).count();
        assert_eq!(by_size(1), 1);
        assert_eq!(by_size(2), 2);
        assert_eq!(by_size(3), 9);
        assert_eq!(by_size(4), 63);
        let corpus = [
            excluded_middle_quasiequation(),
            goedel_dummett_quasiequation(),
            weml_quasiequation(),
            btw_quasiequation(1),
        ];
        let mut compatible_checked = 0usize;
        for a in &algs {
            for q in &corpus {
                if !ill_compatible(a, q, 1).unwrap() {
                    continue;
                }
                compatible_checked += 1;
                let r = check_linear_correspondence(a, q, 1).unwrap();
                assert!(!r.lhs || r.rhs, "lhs without rhs on size {}", a.size());
            }
        }
        assert!(compatible_checked > 10, "compatibility filter too strict");
    }

    #[test]
    fn enumeration_matches_brute_force_at_size_3() {
        // The only 3-element lattice is the chain, whose automorphism group
        // is trivial, so a raw table scan is directly comparable.
        let n = 3usize;
        let leq = |a: usize, b: usize| a <= b;
        let mut found: BTreeSet<(Vec<usize>, usize, usize)> = BTreeSet::new();
        for code in 0..n.pow((n * n) as u32) {
            let mut c = code;
            let mut t = vec![0usize; n * n];
            for cell in t.iter_mut() {
                *cell = c % n;
                c /= n;
            }
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    t[a * n + b] == t[b * n + a]
                        && (0..n).all(|d| t[t[a * n + b] * n + d] == t[a * n + t[b * n + d]])
                })
            });
            if !ok {
                continue;
            }
            for one in 0..n {
                if (0..n).any(|a| t[one * n + a] != a) {
                    continue;
                }
                let residuated = (0..n).all(|a| {
                    (0..n).all(|b| {
                        let r = (0..n).filter(|&c| leq(t[a * n + c], b)).max();
                        r.is_some_and(|r| leq(t[a * n + r], b))
                            && (0..n).all(|c| leq(t[a * n + c], b) == leq(c, r.unwrap()))
                    })
                });
                if !residuated {
                    continue;
                }
                for zero in 0..n {
                    found.insert((t.clone(), one, zero));
                }
            }
        }
        let enumerated = enumerate_fle(3)
            .into_iter()
            .filter(|a| a.size() == 3)
            .count();
        assert_eq!(found.len(), enumerated);
    }

    #[test]
    fn ha_as_fle_agrees_with_ipc_pc_characteristic() {
        let ipc = ipc_profile();
        let corpus = [
            excluded_middle_quasiequation(),
            goedel_dummett_quasiequation(),
            weml_quasiequation(),
        ];
        for ha in [
            crate::algebra::chain(2),
            crate::algebra::chain(3),
            crate::algebra::chain(4),
            crate::algebra::diamond(),
            up_algebra(&v_poset(), Language::full()),
        ] {
            let fle = ha_as_fle(&ha).unwrap();
            for q in &corpus {
                let by_ill =
                    validates_ill(&fle, &characteristic_formula_ill(q, 1).unwrap()).unwrap();
                let by_ipc = characteristic_theorems_pc(q, &ipc, 1)
                    .unwrap()
                    .iter()
                    .all(|f| ha.validates_formula(f).unwrap());
                assert_eq!(by_ill, by_ipc, "{} on size {}", q.display(), ha.size());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for a in [godel_chain(3), mv4()] {
            let back = FLeAlgebra::from_json(&a.to_json()).unwrap();
            assert_eq!(a, back);
        }
        assert!(FLeAlgebra::from_json(&serde_json::json!({"elements": ["a"]})).is_err());
    }
}
