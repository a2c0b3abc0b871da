//! Finite-algebra engine: class detection, formula and quasiequation
//! evaluation, the upset algebra `Up(X)`, and the `A⁺` completion.
//!
//! Elements are indices `0..n-1` and subsets are machine-word bitsets, so the
//! carrier is capped at 64 elements — comfortably above everything the desk
//! scale sweeps need.

use crate::syntax::Formula;
use serde_json::Value;
use std::collections::BTreeMap;
use thiserror::Error;

/// Maximum carrier size (subsets are `u64` bitsets).
pub const MAX_SIZE: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("missing operation {0:?} for formula evaluation")]
    MissingOperation(&'static str),
    #[error("assignment missing variable {0:?}")]
    UnboundVariable(String),
    #[error("carrier of size {0} exceeds the supported maximum {MAX_SIZE}")]
    TooLarge(usize),
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("not a meet-semilattice: elements {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("algebra is not a pseudocomplemented semilattice")]
    NotPsl,
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

// ---------------------------------------------------------------------------
// Posets
// ---------------------------------------------------------------------------

/// A finite poset on `0..n-1`, stored as reflexive-transitive `leq` rows
/// (`up[i]` has bit `j` set iff `i ≤ j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePoset {
    n: usize,
    up: Vec<u64>,
}

impl FinitePoset {
    /// Build from a full `leq` matrix; validates reflexivity, antisymmetry,
    /// and transitivity.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<FinitePoset, AlgebraError> {
        if n > MAX_SIZE {
            return Err(AlgebraError::TooLarge(n));
        }
        let mut up = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i] |= 1 << j;
                }
            }
        }
        let p = FinitePoset { n, up };
        p.validate()?;
        Ok(p)
    }

    /// Build from the reflexive-transitive closure of a set of pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<FinitePoset, AlgebraError> {
        if n > MAX_SIZE {
            return Err(AlgebraError::TooLarge(n));
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(AlgebraError::BadInput(format!(
                    "pair ({i},{j}) out of range for n={n}"
                )));
            }
        }
        let mut up = vec![0u64; n];
        for i in 0..n {
            up[i] |= 1 << i;
        }
        for &(i, j) in pairs {
            up[i] |= 1 << j;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if up[i] >> k & 1 == 1 {
                    up[i] |= up[k];
                }
            }
        }
        let p = FinitePoset { n, up };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.n {
            if self.up[i] >> i & 1 == 0 {
                return Err(AlgebraError::NotAPoset(format!("not reflexive at {i}")));
            }
            for j in 0..self.n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(AlgebraError::NotAPoset(format!(
                        "antisymmetry fails at ({i},{j})"
                    )));
                }
                if self.leq(i, j) && self.up[j] & !self.up[i] != 0 {
                    return Err(AlgebraError::NotAPoset(format!(
                        "transitivity fails above ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    /// Bitset of elements above `i` (inclusive).
    pub fn upset_of(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// Bitset of elements below `i` (inclusive).
    pub fn downset_of(&self, i: usize) -> u64 {
        let mut out = 0u64;
        for j in 0..self.n {
            if self.leq(j, i) {
                out |= 1 << j;
            }
        }
        out
    }

    /// Downward closure of a subset.
    pub fn down_closure(&self, set: u64) -> u64 {
        let mut out = 0u64;
        for j in 0..self.n {
            if self.up[j] & set != 0 {
                out |= 1 << j;
            }
        }
        out
    }

    /// Upward closure of a subset.
    pub fn up_closure(&self, set: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.n {
            if set >> i & 1 == 1 {
                out |= self.up[i];
            }
        }
        out
    }

    /// True iff `set` is an upset.
    pub fn is_upset(&self, set: u64) -> bool {
        self.up_closure(set) == set
    }

    /// All upsets, in ascending bitset order (deterministic).
    pub fn upsets(&self) -> Vec<u64> {
        let full: u64 = if self.n == 64 { !0 } else { (1 << self.n) - 1 };
        let mut out = Vec::new();
        // Enumerate all subsets only for small carriers; otherwise grow from
        // the maximal elements (the sweeps only ever need the small case).
        if self.n <= 20 {
            for set in 0..=full {
                if self.is_upset(set) {
                    out.push(set);
                }
            }
        } else {
            panic!("upsets() is desk-scale only (n <= 20)");
        }
        out
    }

    /// Restriction of the order to the elements of `set` (reindexed in
    /// increasing element order). Returns the restriction together with the
    /// original indices.
    pub fn restrict(&self, set: u64) -> (FinitePoset, Vec<usize>) {
        let elems: Vec<usize> = (0..self.n).filter(|i| set >> i & 1 == 1).collect();
        let p = FinitePoset::new(elems.len(), |a, b| self.leq(elems[a], elems[b]))
            .expect("restriction of a poset is a poset");
        (p, elems)
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lbs = self.downset_of(a) & self.downset_of(b);
        (0..self.n).find(|&m| lbs >> m & 1 == 1 && lbs & !self.downset_of(m) == 0)
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ubs = self.up[a] & self.up[b];
        (0..self.n).find(|&m| ubs >> m & 1 == 1 && ubs & !self.up[m] == 0)
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&b| (0..self.n).all(|a| self.leq(b, a)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.n).find(|&t| (0..self.n).all(|a| self.leq(a, t)))
    }

    /// JSON form `{n, leq: [[i,j], ...]}` listing the full order relation.
    pub fn to_json(&self) -> Value {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq(i, j) {
                    pairs.push(Value::Array(vec![i.into(), j.into()]));
                }
            }
        }
        serde_json::json!({ "n": self.n, "leq": pairs })
    }

    pub fn from_json(v: &Value) -> Result<FinitePoset, AlgebraError> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| AlgebraError::BadInput("poset file needs integer field \"n\"".into()))?
            as usize;
        let pairs = parse_pairs(v.get("leq"), n)?;
        FinitePoset::from_pairs(n, &pairs)
    }
}

fn parse_pairs(v: Option<&Value>, n: usize) -> Result<Vec<(usize, usize)>, AlgebraError> {
    let arr = v
        .and_then(Value::as_array)
        .ok_or_else(|| AlgebraError::BadInput("expected \"leq\" array of pairs".into()))?;
    let mut out = Vec::new();
    for item in arr {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| AlgebraError::BadInput("leq entries must be [i, j] pairs".into()))?;
        let i = pair[0].as_u64().ok_or_else(|| {
            AlgebraError::BadInput("leq entries must be integer pairs".into())
        })? as usize;
        let j = pair[1].as_u64().ok_or_else(|| {
            AlgebraError::BadInput("leq entries must be integer pairs".into())
        })? as usize;
        if i >= n || j >= n {
            return Err(AlgebraError::BadInput(format!(
                "leq pair ({i},{j}) out of range for n={n}"
            )));
        }
        out.push((i, j));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Class tags assigned by [`FiniteAlgebra::classes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Semilattice,
    Bounded,
    Psl,
    Isl,
    BIsl,
    Lattice,
    Distributive,
    Pdl,
    Il,
    Ha,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Semilattice => "Semilattice",
            ClassTag::Bounded => "Bounded",
            ClassTag::Psl => "PSL",
            ClassTag::Isl => "ISL",
            ClassTag::BIsl => "bISL",
            ClassTag::Lattice => "Lattice",
            ClassTag::Distributive => "Distributive",
            ClassTag::Pdl => "PDL",
            ClassTag::Il => "IL",
            ClassTag::Ha => "HA",
        }
    }
}

/// Assignment of elements to variable names.
pub type Assignment = BTreeMap<String, usize>;

/// A finite meet-semilattice-based algebra.
///
/// The meet table is always present; join, implication, and negation tables
/// are synthesized from the order when they exist (we treat `¬` and
/// `→` as definable from `∧` and the order). The detected class profile is
/// computed eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    n: usize,
    labels: Vec<String>,
    meet: Vec<usize>,
    join: Option<Vec<usize>>,
    imp: Option<Vec<usize>>,
    neg: Option<Vec<usize>>,
    poset: FinitePoset,
    bottom: Option<usize>,
    top: Option<usize>,
    classes: Vec<ClassTag>,
}

impl FiniteAlgebra {
    /// Build from an explicit meet table. Checks the semilattice laws and
    /// reports the first violated instance.
    pub fn from_meet_table(
        labels: Vec<String>,
        meet: Vec<Vec<usize>>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::BadInput("empty carrier".into()));
        }
        if n > MAX_SIZE {
            return Err(AlgebraError::TooLarge(n));
        }
        if meet.len() != n || meet.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::BadInput("meet table must be n x n".into()));
        }
        let mut flat = vec![0usize; n * n];
        for (i, row) in meet.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(AlgebraError::BadInput(format!(
                        "meet[{i}][{j}] = {v} out of range"
                    )));
                }
                flat[i * n + j] = v;
            }
        }
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if m(a, a) != a {
                return Err(AlgebraError::LawViolation(format!(
                    "idempotence fails: {a} /\\ {a} = {}",
                    m(a, a)
                )));
            }
            for b in 0..n {
                if m(a, b) != m(b, a) {
                    return Err(AlgebraError::LawViolation(format!(
                        "commutativity fails at ({a},{b})"
                    )));
                }
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(AlgebraError::LawViolation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        // Induced order: a ≤ b iff a ∧ b = a.
        let poset = FinitePoset::new(n, |a, b| m(a, b) == a)?;
        Ok(FiniteAlgebra::finish(labels, flat, poset))
    }

    /// Build from a poset in which every pair has a greatest lower bound.
    pub fn from_poset_meets(
        labels: Vec<String>,
        poset: &FinitePoset,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        let n = poset.size();
        if labels.len() != n {
            return Err(AlgebraError::BadInput(
                "label count must match poset size".into(),
            ));
        }
        let mut flat = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[a * n + b] = poset.meet(a, b).ok_or(AlgebraError::NoMeet(a, b))?;
            }
        }
        Ok(FiniteAlgebra::finish(labels, flat, poset.clone()))
    }

    fn finish(labels: Vec<String>, meet: Vec<usize>, poset: FinitePoset) -> FiniteAlgebra {
        let n = labels.len();
        let bottom = poset.bottom();
        let top = poset.top();
        let join = {
            let mut t = vec![0usize; n * n];
            let mut total = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    match poset.join(a, b) {
                        Some(j) => t[a * n + b] = j,
                        None => {
                            total = false;
                            break 'outer;
                        }
                    }
                }
            }
            total.then_some(t)
        };
        let neg = bottom.and_then(|zero| {
            let mut t = vec![0usize; n];
            for a in 0..n {
                // largest c with c ∧ a = 0
                let cands: Vec<usize> =
                    (0..n).filter(|&c| meet[c * n + a] == zero).collect();
                let best = cands
                    .iter()
                    .copied()
                    .find(|&c| cands.iter().all(|&d| poset.leq(d, c)))?;
                t[a] = best;
            }
            Some(t)
        });
        let imp = {
            let mut t = vec![0usize; n * n];
            let mut total = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    // largest c with c ∧ a ≤ b
                    let cands: Vec<usize> = (0..n)
                        .filter(|&c| poset.leq(meet[c * n + a], b))
                        .collect();
                    match cands
                        .iter()
                        .copied()
                        .find(|&c| cands.iter().all(|&d| poset.leq(d, c)))
                    {
                        Some(best) => t[a * n + b] = best,
                        None => {
                            total = false;
                            break 'outer;
                        }
                    }
                }
            }
            total.then_some(t)
        };
        let mut alg = FiniteAlgebra {
            n,
            labels,
            meet,
            join,
            imp,
            neg,
            poset,
            bottom,
            top,
            classes: Vec::new(),
        };
        alg.classes = alg.detect_classes();
        alg
    }

    /// Detect every applicable class tag by exhaustively checking the
    /// defining laws.
    fn detect_classes(&self) -> Vec<ClassTag> {
        let mut tags = vec![ClassTag::Semilattice];
        let bounded = self.bottom.is_some() && self.top.is_some();
        if bounded {
            tags.push(ClassTag::Bounded);
        }
        let psl = self.bottom.is_some() && self.neg.is_some();
        if psl {
            tags.push(ClassTag::Psl);
        }
        let isl = self.imp.is_some();
        if isl {
            tags.push(ClassTag::Isl);
        }
        if psl && isl {
            tags.push(ClassTag::BIsl);
        }
        let lattice = self.join.is_some();
        if lattice {
            tags.push(ClassTag::Lattice);
        }
        let distributive = lattice && {
            let n = self.n;
            let mut ok = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = self.meet_of(a, self.join_of(b, c).unwrap());
                        let rhs = self
                            .join_of(self.meet_of(a, b), self.meet_of(a, c))
                            .unwrap();
                        if lhs != rhs {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            ok
        };
        if distributive {
            tags.push(ClassTag::Distributive);
        }
        if psl && lattice && distributive {
            tags.push(ClassTag::Pdl);
        }
        if isl && lattice && distributive {
            tags.push(ClassTag::Il);
        }
        if isl && lattice && distributive && self.bottom.is_some() {
            tags.push(ClassTag::Ha);
        }
        tags
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn classes(&self) -> &[ClassTag] {
        &self.classes
    }

    pub fn has_class(&self, tag: ClassTag) -> bool {
        self.classes.contains(&tag)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet_of(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join_of(&self, a: usize, b: usize) -> Option<usize> {
        self.join.as_ref().map(|t| t[a * self.n + b])
    }

    pub fn imp_of(&self, a: usize, b: usize) -> Option<usize> {
        self.imp.as_ref().map(|t| t[a * self.n + b])
    }

    pub fn neg_of(&self, a: usize) -> Option<usize> {
        self.neg.as_ref().map(|t| t[a])
    }

    pub fn zero(&self) -> Option<usize> {
        self.bottom
    }

    pub fn one(&self) -> Option<usize> {
        self.top
    }

    /// Evaluate a (non-modal) formula under an assignment.
    pub fn eval_formula(&self, f: &Formula, sigma: &Assignment) -> Result<usize, AlgebraError> {
        match f {
            Formula::Var(v) => sigma
                .get(v)
                .copied()
                .ok_or_else(|| AlgebraError::UnboundVariable(v.clone())),
            Formula::Const0 => self.bottom.ok_or(AlgebraError::MissingOperation("0")),
            Formula::Const1 => self.top.ok_or(AlgebraError::MissingOperation("1")),
            Formula::And(l, r) => {
                Ok(self.meet_of(self.eval_formula(l, sigma)?, self.eval_formula(r, sigma)?))
            }
            Formula::Or(l, r) => {
                let (a, b) = (self.eval_formula(l, sigma)?, self.eval_formula(r, sigma)?);
                self.join_of(a, b).ok_or(AlgebraError::MissingOperation("|"))
            }
            Formula::Imp(l, r) => {
                let (a, b) = (self.eval_formula(l, sigma)?, self.eval_formula(r, sigma)?);
                self.imp_of(a, b).ok_or(AlgebraError::MissingOperation("->"))
            }
            Formula::Not(x) => {
                let a = self.eval_formula(x, sigma)?;
                self.neg_of(a).ok_or(AlgebraError::MissingOperation("~"))
            }
            Formula::Box_(_) | Formula::Diamond(_) => {
                Err(AlgebraError::MissingOperation("[] / <>"))
            }
        }
    }

    /// True iff `f` evaluates to `1` under every assignment (exhaustive).
    pub fn validates_formula(&self, f: &Formula) -> Result<bool, AlgebraError> {
        let one = self.top.ok_or(AlgebraError::MissingOperation("1"))?;
        let vars = f.variables();
        let mut sigma = Assignment::new();
        self.for_each_assignment(&vars, &mut sigma, &mut |alg, sigma| {
            Ok(alg.eval_formula(f, sigma)? == one)
        })
    }

    fn for_each_assignment(
        &self,
        vars: &[String],
        sigma: &mut Assignment,
        check: &mut dyn FnMut(&FiniteAlgebra, &Assignment) -> Result<bool, AlgebraError>,
    ) -> Result<bool, AlgebraError> {
        match vars.split_first() {
            None => check(self, sigma),
            Some((v, rest)) => {
                for e in 0..self.n {
                    sigma.insert(v.clone(), e);
                    if !self.for_each_assignment(rest, sigma, check)? {
                        return Ok(false);
                    }
                }
                sigma.remove(v);
                Ok(true)
            }
        }
    }

    /// Native quasiequation evaluation: true iff for all assignments to the
    /// premise variables and to `y`, `z`:
    /// `(∀i: φᵢ ∧ y ≤ z)` implies `y ≤ z`.
    ///
    /// No `∨`-disjunction shortcut is used, so PSL/ISL inputs work. The `z`
    /// quantifier is discharged with precomputed upset bitsets.
    pub fn validates_quasiequation(
        &self,
        q: &crate::syntax::Quasiequation,
    ) -> Result<bool, AlgebraError> {
        let n = self.n;
        // For each y: bitset of z with y ≰ z.
        let not_above: Vec<u64> = (0..n)
            .map(|y| {
                let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
                full & !self.poset.upset_of(y)
            })
            .collect();
        let vars = q.premise_variables();
        let mut sigma = Assignment::new();
        let premises = &q.premises;
        self.for_each_assignment(&vars, &mut sigma, &mut |alg, sigma| {
            let mut vals = Vec::with_capacity(premises.len());
            for p in premises {
                vals.push(alg.eval_formula(p, sigma)?);
            }
            for y in 0..n {
                // z must lie above every φᵢ ∧ y and must not lie above y.
                let mut zs = not_above[y];
                for &v in &vals {
                    zs &= alg.poset.upset_of(alg.meet_of(v, y));
                    if zs == 0 {
                        break;
                    }
                }
                if zs != 0 {
                    return Ok(false); // counterexample found
                }
            }
            Ok(true)
        })
    }

    /// Like [`validates_quasiequation`](Self::validates_quasiequation), but
    /// returns a failing assignment (including `y`, `z`) when the
    /// quasiequation does not hold.
    pub fn quasiequation_counterexample(
        &self,
        q: &crate::syntax::Quasiequation,
    ) -> Result<Option<Assignment>, AlgebraError> {
        let n = self.n;
        let vars = q.premise_variables();
        let mut sigma = Assignment::new();
        let mut witness: Option<Assignment> = None;
        let premises = q.premises.clone();
        let qy = q.context_y.clone();
        let qz = q.context_z.clone();
        self.for_each_assignment(&vars, &mut sigma, &mut |alg, sigma| {
            for y in 0..n {
                for z in 0..n {
                    if alg.leq(y, z) {
                        continue;
                    }
                    let mut all_ok = true;
                    for p in &premises {
                        let v = alg.eval_formula(p, sigma)?;
                        if !alg.leq(alg.meet_of(v, y), z) {
                            all_ok = false;
                            break;
                        }
                    }
                    if all_ok {
                        let mut w = sigma.clone();
                        w.insert(qy.clone(), y);
                        w.insert(qz.clone(), z);
                        witness = Some(w);
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })?;
        Ok(witness)
    }

    /// JSON loader: either `{elements: [names], leq: [[i,j],...]}` (order
    /// presented; meets computed) or `{elements: [names], meet: [[..],..]}`.
    pub fn from_json(v: &Value) -> Result<FiniteAlgebra, AlgebraError> {
        let labels: Vec<String> = v
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| AlgebraError::BadInput("algebra file needs \"elements\"".into()))?
            .iter()
            .map(|e| {
                e.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| AlgebraError::BadInput("element names must be strings".into()))
            })
            .collect::<Result<_, _>>()?;
        let n = labels.len();
        if let Some(meet) = v.get("meet") {
            let rows = meet
                .as_array()
                .ok_or_else(|| AlgebraError::BadInput("\"meet\" must be an array".into()))?;
            let table: Vec<Vec<usize>> = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| AlgebraError::BadInput("meet rows must be arrays".into()))?
                        .iter()
                        .map(|x| {
                            x.as_u64().map(|u| u as usize).ok_or_else(|| {
                                AlgebraError::BadInput("meet entries must be integers".into())
                            })
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            FiniteAlgebra::from_meet_table(labels, table)
        } else {
            let pairs = parse_pairs(v.get("leq"), n)?;
            let poset = FinitePoset::from_pairs(n, &pairs)?;
            FiniteAlgebra::from_poset_meets(labels, &poset)
        }
    }

    pub fn to_json(&self) -> Value {
        let mut pairs = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.leq(i, j) {
                    pairs.push(Value::Array(vec![i.into(), j.into()]));
                }
            }
        }
        serde_json::json!({ "elements": self.labels, "leq": pairs })
    }
}

// ---------------------------------------------------------------------------
// Up(X)
// ---------------------------------------------------------------------------

/// Which operation tables `up_algebra` keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Language {
    pub and: bool,
    pub or: bool,
    pub imp: bool,
    pub not: bool,
    pub zero: bool,
    pub one: bool,
}

impl Language {
    pub fn full() -> Language {
        Language {
            and: true,
            or: true,
            imp: true,
            not: true,
            zero: true,
            one: true,
        }
    }

    /// `{∧, ¬, 0, 1}`.
    pub fn psl() -> Language {
        Language {
            and: true,
            or: false,
            imp: false,
            not: true,
            zero: true,
            one: true,
        }
    }

    /// `{∧, →, 1}`.
    pub fn isl() -> Language {
        Language {
            and: true,
            or: false,
            imp: true,
            not: false,
            zero: false,
            one: true,
        }
    }

    /// True iff every connective of `f` is available.
    pub fn supports(&self, f: &Formula) -> bool {
        f.connectives().iter().all(|c| match *c {
            "&" => self.and,
            "|" => self.or,
            "->" => self.imp,
            "~" => self.not,
            "0" => self.zero,
            "1" => self.one,
            _ => false,
        })
    }
}

/// The algebra of upsets of `X` with
/// `U → V := X ∖ ↓(U ∖ V)` and `¬U := U → ∅`, restricted to the requested
/// language. (The full-language result is always a Heyting algebra.)
///
/// The restriction only governs which operations [`FiniteAlgebra::eval_formula`]
/// will refuse; the carrier and order are those of the full upset lattice.
pub fn up_algebra(x: &FinitePoset, _language: Language) -> FiniteAlgebra {
    let upsets = x.upsets();
    let labels: Vec<String> = upsets.iter().map(|u| format!("U{u}")).collect();
    let index: BTreeMap<u64, usize> = upsets
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, i))
        .collect();
    let n = upsets.len();
    let mut meet = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            meet[i][j] = index[&(upsets[i] & upsets[j])];
        }
    }
    FiniteAlgebra::from_meet_table(labels, meet)
        .expect("upset intersection is a semilattice")
}

/// The upsets backing each element of [`up_algebra`] (ascending bitsets, same
/// order as the element indices).
pub fn up_algebra_carrier(x: &FinitePoset) -> Vec<u64> {
    x.upsets()
}

// ---------------------------------------------------------------------------
// Join-irreducibles and A⁺
// ---------------------------------------------------------------------------

/// The poset of join-irreducible elements of `A` (nonzero elements that are
/// not the least upper bound of two strictly smaller elements), with the
/// original element indices.
pub fn join_irreducibles(a: &FiniteAlgebra) -> (FinitePoset, Vec<usize>) {
    let n = a.size();
    let zero = a.zero();
    let mut ji = Vec::new();
    for e in 0..n {
        if Some(e) == zero {
            continue;
        }
        let mut irreducible = true;
        'outer: for b in 0..n {
            for c in 0..n {
                if b != e && c != e && a.poset().join(b, c) == Some(e) {
                    irreducible = false;
                    break 'outer;
                }
            }
        }
        if irreducible {
            ji.push(e);
        }
    }
    let poset = FinitePoset::new(ji.len(), |i, j| a.leq(ji[i], ji[j]))
        .expect("induced subposet is a poset");
    (poset, ji)
}

/// The completion `A⁺ = ⟨Dw(J(A)); ∩, ¬, ∅, J(A)⟩` of a finite PSL on the
/// downsets of its join-irreducibles, with
/// `¬D := {a ∈ J(A) : D ∩ ↓a = ∅}`, together with the embedding
/// `ε(a) = index of J(A) ∩ ↓a`.
pub fn a_plus(a: &FiniteAlgebra) -> Result<(FiniteAlgebra, Vec<usize>), AlgebraError> {
    if !a.has_class(ClassTag::Psl) {
        return Err(AlgebraError::NotPsl);
    }
    let (jposet, jelems) = join_irreducibles(a);
    let m = jposet.size();
    // Downsets of the J-poset, ascending bitset order.
    let full: u64 = if m == 0 { 0 } else { (1u64 << m) - 1 };
    let mut downsets = Vec::new();
    for set in 0..=full {
        if jposet.down_closure(set) == set {
            downsets.push(set);
        }
    }
    let index: BTreeMap<u64, usize> = downsets
        .iter()
        .enumerate()
        .map(|(i, &d)| (d, i))
        .collect();
    let n = downsets.len();
    let labels: Vec<String> = downsets.iter().map(|d| format!("D{d}")).collect();
    let mut meet = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            meet[i][j] = index[&(downsets[i] & downsets[j])];
        }
    }
    let plus = FiniteAlgebra::from_meet_table(labels, meet)?;
    // ε(a) = J(A) ∩ ↓a.
    let mut eps = Vec::with_capacity(a.size());
    for e in 0..a.size() {
        let mut d = 0u64;
        for (ji_idx, &orig) in jelems.iter().enumerate() {
            if a.leq(orig, e) {
                d |= 1 << ji_idx;
            }
        }
        eps.push(index[&d]);
    }
    Ok((plus, eps))
}

/// Check that `eps` is an embedding of `a` into `plus` for the `{∧,¬,0,1}`
/// language: injective, order reflecting, and preserving meet, negation, and
/// the bounds.
pub fn epsilon_is_embedding(a: &FiniteAlgebra, plus: &FiniteAlgebra, eps: &[usize]) -> bool {
    let n = a.size();
    for i in 0..n {
        for j in 0..n {
            if i != j && eps[i] == eps[j] {
                return false;
            }
            if a.leq(i, j) != plus.leq(eps[i], eps[j]) {
                return false;
            }
            if eps[a.meet_of(i, j)] != plus.meet_of(eps[i], eps[j]) {
                return false;
            }
        }
        match (a.neg_of(i), plus.neg_of(eps[i])) {
            (Some(na), Some(npa)) => {
                if eps[na] != npa {
                    return false;
                }
            }
            _ => return false,
        }
    }
    matches!((a.zero(), plus.zero()), (Some(z), Some(pz)) if eps[z] == pz)
        && matches!((a.one(), plus.one()), (Some(o), Some(po)) if eps[o] == po)
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

/// The lattice `N₅` (`0 < a < b < 1`, `0 < c < 1`) as a meet-semilattice
/// algebra. It is a PSL but not distributive.
pub fn n5() -> FiniteAlgebra {
    let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
    let poset = FinitePoset::from_pairs(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
    FiniteAlgebra::from_poset_meets(labels, &poset).unwrap()
}

/// The chain `0 < … < n-1` as an algebra (a Heyting algebra for `n ≥ 1`).
pub fn chain(n: usize) -> FiniteAlgebra {
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let poset = FinitePoset::new(n, |a, b| a <= b).unwrap();
    FiniteAlgebra::from_poset_meets(labels, &poset).unwrap()
}

/// The four-element diamond `0 < a, b < 1` (the Heyting algebra of upsets of
/// a two-element antichain).
pub fn diamond() -> FiniteAlgebra {
    let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
    let poset = FinitePoset::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    FiniteAlgebra::from_poset_meets(labels, &poset).unwrap()
}

/// The V-shaped poset: one root below two incomparable points.
pub fn v_poset() -> FinitePoset {
    FinitePoset::from_pairs(3, &[(0, 1), (0, 2)]).unwrap()
}

/// The eight-element pseudocomplemented semilattice of the counterexample
/// separating a Sahlqvist quasiequation from its context-free version.
///
/// Elements: `0, a1, a2, a, c, b3, b, 1` (indices 0..8). The Hasse diagram
/// has covers `0<a1, 0<a2, a1<a, a1<c, a2<c, a2<b3, a<1, c<b, b3<1, b<1`.
/// The constructor is gated: it asserts the defining behavior (the
/// context-free quasiequation holds while the contextual one fails at
/// `x↦a, y↦b, z↦c`) before returning.
pub fn figure_psl() -> FiniteAlgebra {
    let labels = ["0", "a1", "a2", "a", "c", "b3", "b", "1"]
        .map(String::from)
        .to_vec();
    let covers = [
        (0, 1),
        (0, 2),
        (1, 3),
        (1, 4),
        (2, 4),
        (2, 5),
        (3, 7),
        (4, 6),
        (5, 7),
        (6, 7),
    ];
    let poset = FinitePoset::from_pairs(8, &covers).unwrap();
    let alg = FiniteAlgebra::from_poset_meets(labels, &poset).unwrap();
    assert!(alg.has_class(ClassTag::Psl), "fixture gate: must be a PSL");
    // Gate 1: the contextual quasiequation (premises ¬x, ¬¬x) fails at
    // x↦a, y↦b, z↦c.
    let (a, b, c) = (3usize, 6usize, 4usize);
    let na = alg.neg_of(a).unwrap();
    let nna = alg.neg_of(na).unwrap();
    assert!(
        alg.leq(alg.meet_of(na, b), c) && alg.leq(alg.meet_of(nna, b), c) && !alg.leq(b, c),
        "fixture gate: contextual quasiequation must fail at (a, b, c)"
    );
    // Gate 2: the context-free version (¬x ≤ z & ¬¬x ≤ z ⟹ z = 1) holds.
    let one = alg.one().unwrap();
    for x in 0..8 {
        for z in 0..8 {
            let nx = alg.neg_of(x).unwrap();
            let nnx = alg.neg_of(nx).unwrap();
            if alg.leq(nx, z) && alg.leq(nnx, z) {
                assert_eq!(z, one, "fixture gate: context-free version must hold");
            }
        }
    }
    alg
}
