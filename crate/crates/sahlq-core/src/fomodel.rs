//! First-order model checking over finite posets and the enumeration
//! oracles the regression suites run on.
//!
//! Sentences live in the signature `{≤, =}` extended, before quantifier
//! elimination, with unary predicate variables. Evaluation is plain
//! Tarskian exhaustive quantification — bounds are small by design — and a
//! second, independently coded evaluator (quantifier expansion into ground
//! formulas) guards against bugs in the first.

use crate::algebra::{ClassTag, FiniteAlgebra, FinitePoset};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoError {
    #[error("unbound predicate variable {0:?} (sentence is not predicate-variable-free)")]
    UnboundPredicateVariable(String),
    #[error("unbound individual variable {0:?}")]
    UnboundVariable(String),
}

/// A first-order formula over posets. Individual variables are strings;
/// `Pred` applications may appear only before quantifier elimination.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FoFormula {
    True,
    False,
    /// `x ≤ y`.
    Leq(String, String),
    /// `x = y`.
    Eq(String, String),
    /// `P(x)` for a unary predicate variable `P`.
    Pred(String, String),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Or(Vec<FoFormula>),
    Imp(Box<FoFormula>, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

impl FoFormula {
    pub fn leq(x: &str, y: &str) -> FoFormula {
        FoFormula::Leq(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> FoFormula {
        FoFormula::Eq(x.into(), y.into())
    }

    pub fn not(f: FoFormula) -> FoFormula {
        FoFormula::Not(Box::new(f))
    }

    pub fn imp(a: FoFormula, b: FoFormula) -> FoFormula {
        FoFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: FoFormula) -> FoFormula {
        FoFormula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: &str, f: FoFormula) -> FoFormula {
        FoFormula::Exists(v.into(), Box::new(f))
    }

    /// Conjunction that flattens nested conjunctions and trivial cases.
    pub fn and(fs: Vec<FoFormula>) -> FoFormula {
        let mut fs: Vec<FoFormula> = fs
            .into_iter()
            .flat_map(|f| match f {
                FoFormula::And(inner) => inner,
                other => vec![other],
            })
            .collect();
        fs.retain(|f| *f != FoFormula::True);
        if fs.iter().any(|f| *f == FoFormula::False) {
            return FoFormula::False;
        }
        match fs.len() {
            0 => FoFormula::True,
            1 => fs.pop().unwrap(),
            _ => FoFormula::And(fs),
        }
    }

    /// Disjunction that flattens nested disjunctions and trivial cases.
    pub fn or(fs: Vec<FoFormula>) -> FoFormula {
        let mut fs: Vec<FoFormula> = fs
            .into_iter()
            .flat_map(|f| match f {
                FoFormula::Or(inner) => inner,
                other => vec![other],
            })
            .collect();
        fs.retain(|f| *f != FoFormula::False);
        if fs.iter().any(|f| *f == FoFormula::True) {
            return FoFormula::True;
        }
        match fs.len() {
            0 => FoFormula::False,
            1 => fs.pop().unwrap(),
            _ => FoFormula::Or(fs),
        }
    }

    /// True iff no predicate variable occurs.
    pub fn is_predicate_free(&self) -> bool {
        match self {
            FoFormula::Pred(..) => false,
            FoFormula::True | FoFormula::False | FoFormula::Leq(..) | FoFormula::Eq(..) => true,
            FoFormula::Not(a) => a.is_predicate_free(),
            FoFormula::And(fs) | FoFormula::Or(fs) => fs.iter().all(|f| f.is_predicate_free()),
            FoFormula::Imp(a, b) => a.is_predicate_free() && b.is_predicate_free(),
            FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => a.is_predicate_free(),
        }
    }

    /// Free individual variables.
    pub fn free_variables(&self) -> BTreeSet<String> {
        fn go(f: &FoFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                FoFormula::True | FoFormula::False => {}
                FoFormula::Leq(x, y) | FoFormula::Eq(x, y) => {
                    for v in [x, y] {
                        if !bound.contains(v) {
                            out.insert(v.clone());
                        }
                    }
                }
                FoFormula::Pred(_, x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                FoFormula::Not(a) => go(a, bound, out),
                FoFormula::And(fs) | FoFormula::Or(fs) => {
                    for g in fs {
                        go(g, bound, out);
                    }
                }
                FoFormula::Imp(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                FoFormula::Forall(v, a) | FoFormula::Exists(v, a) => {
                    bound.push(v.clone());
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Number of quantifier nodes.
    pub fn quantifier_count(&self) -> usize {
        match self {
            FoFormula::True
            | FoFormula::False
            | FoFormula::Leq(..)
            | FoFormula::Eq(..)
            | FoFormula::Pred(..) => 0,
            FoFormula::Not(a) => a.quantifier_count(),
            FoFormula::And(fs) | FoFormula::Or(fs) => {
                fs.iter().map(|f| f.quantifier_count()).sum()
            }
            FoFormula::Imp(a, b) => a.quantifier_count() + b.quantifier_count(),
            FoFormula::Forall(_, a) | FoFormula::Exists(_, a) => 1 + a.quantifier_count(),
        }
    }

    /// S-expression rendering, e.g. `(forall x (imp (leq x y) ...))`.
    pub fn to_sexpr(&self) -> String {
        match self {
            FoFormula::True => "true".into(),
            FoFormula::False => "false".into(),
            FoFormula::Leq(x, y) => format!("(leq {x} {y})"),
            FoFormula::Eq(x, y) => format!("(eq {x} {y})"),
            FoFormula::Pred(p, x) => format!("({p} {x})"),
            FoFormula::Not(a) => format!("(not {})", a.to_sexpr()),
            FoFormula::And(fs) => format!(
                "(and {})",
                fs.iter().map(|f| f.to_sexpr()).collect::<Vec<_>>().join(" ")
            ),
            FoFormula::Or(fs) => format!(
                "(or {})",
                fs.iter().map(|f| f.to_sexpr()).collect::<Vec<_>>().join(" ")
            ),
            FoFormula::Imp(a, b) => format!("(imp {} {})", a.to_sexpr(), b.to_sexpr()),
            FoFormula::Forall(v, a) => format!("(forall {v} {})", a.to_sexpr()),
            FoFormula::Exists(v, a) => format!("(exists {v} {})", a.to_sexpr()),
        }
    }
}

impl std::fmt::Display for FoFormula {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FoFormula::True => write!(out, "true"),
            FoFormula::False => write!(out, "false"),
            FoFormula::Leq(x, y) => write!(out, "{x} <= {y}"),
            FoFormula::Eq(x, y) => write!(out, "{x} = {y}"),
            FoFormula::Pred(p, x) => write!(out, "{p}({x})"),
            FoFormula::Not(a) => write!(out, "!({a})"),
            FoFormula::And(fs) => {
                write!(out, "({})", fs.iter().map(|f| f.to_string()).join(" & "))
            }
            FoFormula::Or(fs) => {
                write!(out, "({})", fs.iter().map(|f| f.to_string()).join(" | "))
            }
            FoFormula::Imp(a, b) => write!(out, "({a} -> {b})"),
            FoFormula::Forall(v, a) => write!(out, "forall {v}. {a}"),
            FoFormula::Exists(v, a) => write!(out, "exists {v}. {a}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Model checking
// ---------------------------------------------------------------------------

/// Tarskian evaluation of a predicate-variable-free sentence over a poset
/// (quantifiers range over the carrier; `≤` is the poset order).
pub fn check_fo(x: &FinitePoset, sigma: &FoFormula) -> Result<bool, FoError> {
    let mut env = BTreeMap::new();
    eval_fo(x, sigma, &mut env)
}

/// Evaluation with free variables pre-bound.
pub fn eval_fo(
    x: &FinitePoset,
    f: &FoFormula,
    env: &mut BTreeMap<String, usize>,
) -> Result<bool, FoError> {
    match f {
        FoFormula::True => Ok(true),
        FoFormula::False => Ok(false),
        FoFormula::Leq(a, b) => {
            let (va, vb) = (lookup(env, a)?, lookup(env, b)?);
            Ok(x.leq(va, vb))
        }
        FoFormula::Eq(a, b) => Ok(lookup(env, a)? == lookup(env, b)?),
        FoFormula::Pred(p, _) => Err(FoError::UnboundPredicateVariable(p.clone())),
        FoFormula::Not(a) => Ok(!eval_fo(x, a, env)?),
        FoFormula::And(fs) => {
            for g in fs {
                if !eval_fo(x, g, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FoFormula::Or(fs) => {
            for g in fs {
                if eval_fo(x, g, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        FoFormula::Imp(a, b) => Ok(!eval_fo(x, a, env)? || eval_fo(x, b, env)?),
        FoFormula::Forall(v, a) => {
            let saved = env.get(v).copied();
            for e in 0..x.size() {
                env.insert(v.clone(), e);
                if !eval_fo(x, a, env)? {
                    restore(env, v, saved);
                    return Ok(false);
                }
            }
            restore(env, v, saved);
            Ok(true)
        }
        FoFormula::Exists(v, a) => {
            let saved = env.get(v).copied();
            for e in 0..x.size() {
                env.insert(v.clone(), e);
                if eval_fo(x, a, env)? {
                    restore(env, v, saved);
                    return Ok(true);
                }
            }
            restore(env, v, saved);
            Ok(false)
        }
    }
}

fn lookup(env: &BTreeMap<String, usize>, v: &str) -> Result<usize, FoError> {
    env.get(v)
        .copied()
        .ok_or_else(|| FoError::UnboundVariable(v.to_string()))
}

fn restore(env: &mut BTreeMap<String, usize>, v: &str, saved: Option<usize>) {
    match saved {
        Some(e) => {
            env.insert(v.to_string(), e);
        }
        None => {
            env.remove(v);
        }
    }
}

/// Second, independently coded evaluator: expand every quantifier into a
/// ground conjunction/disjunction over carrier constants `#0..#n-1`, then
/// evaluate the ground formula. Used as a cross-check on [`check_fo`].
pub fn check_fo_expansion(x: &FinitePoset, sigma: &FoFormula) -> Result<bool, FoError> {
    fn expand(f: &FoFormula, n: usize, sub: &BTreeMap<String, usize>) -> FoFormula {
        match f {
            FoFormula::True | FoFormula::False | FoFormula::Pred(..) => f.clone(),
            FoFormula::Leq(a, b) => FoFormula::Leq(ground(a, sub), ground(b, sub)),
            FoFormula::Eq(a, b) => FoFormula::Eq(ground(a, sub), ground(b, sub)),
            FoFormula::Not(a) => FoFormula::not(expand(a, n, sub)),
            FoFormula::And(fs) => {
                FoFormula::And(fs.iter().map(|g| expand(g, n, sub)).collect())
            }
            FoFormula::Or(fs) => FoFormula::Or(fs.iter().map(|g| expand(g, n, sub)).collect()),
            FoFormula::Imp(a, b) => FoFormula::imp(expand(a, n, sub), expand(b, n, sub)),
            FoFormula::Forall(v, a) => FoFormula::And(
                (0..n)
                    .map(|e| {
                        let mut s = sub.clone();
                        s.insert(v.clone(), e);
                        expand(a, n, &s)
                    })
                    .collect(),
            ),
            FoFormula::Exists(v, a) => FoFormula::Or(
                (0..n)
                    .map(|e| {
                        let mut s = sub.clone();
                        s.insert(v.clone(), e);
                        expand(a, n, &s)
                    })
                    .collect(),
            ),
        }
    }
    fn ground(v: &str, sub: &BTreeMap<String, usize>) -> String {
        match sub.get(v) {
            Some(e) => format!("#{e}"),
            None => v.to_string(),
        }
    }
    fn eval_ground(x: &FinitePoset, f: &FoFormula) -> Result<bool, FoError> {
        let idx = |v: &str| -> Result<usize, FoError> {
            v.strip_prefix('#')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| FoError::UnboundVariable(v.to_string()))
        };
        match f {
            FoFormula::True => Ok(true),
            FoFormula::False => Ok(false),
            FoFormula::Leq(a, b) => Ok(x.leq(idx(a)?, idx(b)?)),
            FoFormula::Eq(a, b) => Ok(idx(a)? == idx(b)?),
            FoFormula::Pred(p, _) => Err(FoError::UnboundPredicateVariable(p.clone())),
            FoFormula::Not(a) => Ok(!eval_ground(x, a)?),
            FoFormula::And(fs) => {
                for g in fs {
                    if !eval_ground(x, g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            FoFormula::Or(fs) => {
                for g in fs {
                    if eval_ground(x, g)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            FoFormula::Imp(a, b) => Ok(!eval_ground(x, a)? || eval_ground(x, b)?),
            FoFormula::Forall(..) | FoFormula::Exists(..) => {
                unreachable!("expansion removed all quantifiers")
            }
        }
    }
    let ground_formula = expand(sigma, x.size(), &BTreeMap::new());
    eval_ground(x, &ground_formula)
}

/// True iff no poset of size 1..=`bound` (up to isomorphism) distinguishes
/// the two predicate-variable-free sentences.
pub fn fo_equivalent(s1: &FoFormula, s2: &FoFormula, bound: usize) -> Result<bool, FoError> {
    for p in enumerate_posets(&EnumerationConfig::posets(bound)) {
        if check_fo(&p, s1)? != check_fo(&p, s2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Class filter for [`enumerate_algebras`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    Posets,
    Semilattice,
    Psl,
    Isl,
    BIsl,
    Pdl,
    Il,
    Ha,
}

impl ClassFilter {
    pub fn from_name(name: &str) -> Option<ClassFilter> {
        Some(match name.to_ascii_lowercase().as_str() {
            "posets" | "poset" => ClassFilter::Posets,
            "semilattice" | "sl" => ClassFilter::Semilattice,
            "psl" => ClassFilter::Psl,
            "isl" => ClassFilter::Isl,
            "bisl" => ClassFilter::BIsl,
            "pdl" => ClassFilter::Pdl,
            "il" => ClassFilter::Il,
            "ha" => ClassFilter::Ha,
            _ => return None,
        })
    }

    fn tag(self) -> Option<ClassTag> {
        match self {
            ClassFilter::Posets => None,
            ClassFilter::Semilattice => Some(ClassTag::Semilattice),
            ClassFilter::Psl => Some(ClassTag::Psl),
            ClassFilter::Isl => Some(ClassTag::Isl),
            ClassFilter::BIsl => Some(ClassTag::BIsl),
            ClassFilter::Pdl => Some(ClassTag::Pdl),
            ClassFilter::Il => Some(ClassTag::Il),
            ClassFilter::Ha => Some(ClassTag::Ha),
        }
    }
}

/// Configuration for the enumeration oracles.
#[derive(Debug, Clone)]
pub struct EnumerationConfig {
    pub max_size: usize,
    pub class: ClassFilter,
    pub dedup: bool,
    pub seed: u64,
}

impl EnumerationConfig {
    pub fn posets(max_size: usize) -> EnumerationConfig {
        assert!(max_size >= 1);
        EnumerationConfig {
            max_size,
            class: ClassFilter::Posets,
            dedup: true,
            seed: 0,
        }
    }

    pub fn algebras(max_size: usize, class: ClassFilter) -> EnumerationConfig {
        assert!(max_size >= 1);
        EnumerationConfig {
            max_size,
            class,
            dedup: true,
            seed: 0,
        }
    }
}

/// Canonical form of a poset: the lexicographically least adjacency matrix
/// over all permutations of the carrier.
pub fn canonical_form(p: &FinitePoset) -> Vec<u64> {
    let n = p.size();
    let mut best: Option<Vec<u64>> = None;
    for perm in (0..n).permutations(n) {
        // perm[i] is the new name of element i; row r of the candidate is
        // the relation row of the element renamed to r.
        let mut inv = vec![0usize; n];
        for (i, &pi) in perm.iter().enumerate() {
            inv[pi] = i;
        }
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let mut row = 0u64;
            for c in 0..n {
                if p.leq(inv[r], inv[c]) {
                    row |= 1 << c;
                }
            }
            rows.push(row);
        }
        if best.as_ref().map_or(true, |b| rows < *b) {
            best = Some(rows);
        }
    }
    best.unwrap_or_default()
}

/// All posets of size 1..=`cfg.max_size`.
///
/// Generation works level by level: every representative of size `k` is
/// extended by a new maximal element whose strict downset ranges over the
/// down-closed subsets, and each level is deduplicated by canonical form
/// when `cfg.dedup` is set. With dedup the stream is one representative per
/// isomorphism class, in a deterministic order.
pub fn enumerate_posets(cfg: &EnumerationConfig) -> Vec<FinitePoset> {
    let mut out = Vec::new();
    let mut level = vec![FinitePoset::new(1, |_, _| true).unwrap()];
    out.extend(level.iter().cloned());
    for size in 2..=cfg.max_size {
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for p in &level {
            let k = size - 1;
            let full: u64 = (1 << k) - 1;
            for downset in 0..=full {
                if p.down_closure(downset) != downset {
                    continue;
                }
                let q = FinitePoset::new(size, |a, b| {
                    if a < k && b < k {
                        p.leq(a, b)
                    } else if b == k {
                        a == k || downset >> a & 1 == 1
                    } else {
                        false
                    }
                })
                .expect("maximal-element extension is a poset");
                if cfg.dedup {
                    if seen.insert(canonical_form(&q)) {
                        next.push(q);
                    }
                } else {
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Independent brute-force generator of all labeled posets on `n` elements
/// (scans every reflexive relation given by an off-diagonal bit choice).
/// Cross-checks [`enumerate_posets`]; practical for `n ≤ 4`.
pub fn labeled_posets_brute_force(n: usize) -> Vec<FinitePoset> {
    assert!(n >= 1 && n <= 4, "brute-force labeled scan is for n <= 4");
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let bits = off_diag.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << bits) {
        let rel = |i: usize, j: usize| {
            i == j
                || off_diag
                    .iter()
                    .position(|&p| p == (i, j))
                    .map_or(false, |k| mask >> k & 1 == 1)
        };
        if let Ok(p) = FinitePoset::new(n, rel) {
            out.push(p);
        }
    }
    out
}

/// All algebras of size 1..=`cfg.max_size` in the requested class, one per
/// isomorphism class. Semilattice-based algebras are fully determined by
/// their order, so the stream is the poset stream filtered by meet
/// existence and class detection.
pub fn enumerate_algebras(cfg: &EnumerationConfig) -> Vec<FiniteAlgebra> {
    let tag = cfg.class.tag();
    let mut out = Vec::new();
    for p in enumerate_posets(cfg) {
        let labels: Vec<String> = (0..p.size()).map(|i| format!("e{i}")).collect();
        if let Ok(a) = FiniteAlgebra::from_poset_meets(labels, &p) {
            if tag.map_or(true, |t| a.has_class(t)) {
                out.push(a);
            }
        }
    }
    out
}
