//! The protoalgebraic layer: witness families for the inconsistency lemma
//! (IL), deduction theorem (DT), and proof by cases (PC); compatibility; the
//! `φᵏ` doubling construction; metarule synthesis; characteristic theorem
//! sets; the `A(Φ)` axiom sets; and the IPC instantiation on Heyting
//! algebras (deductive-filter generation, the compact-filter semilattice,
//! and spectra).

use crate::algebra::{ClassTag, FiniteAlgebra, FinitePoset};
use crate::duality::meet_irreducible_filters;
use crate::syntax::{Formula, Quasiequation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetaError {
    #[error("connective {0:?} is not compatible with this logic profile")]
    NotCompatible(&'static str),
    #[error("logic profile lacks the {0} witness family")]
    MissingWitness(&'static str),
    #[error("expected a Heyting algebra")]
    NotHeyting,
}

/// IL witness: arguments `φ1..φn`, result `∼ₙ(φ1,…,φn)`.
pub type IlScheme = Box<dyn Fn(&[Formula]) -> Vec<Formula>>;
/// DT witness: arguments `(φ⃗, ψ⃗)`, result `(φ⃗) ⇒ (ψ⃗)`.
pub type DtScheme = Box<dyn Fn(&[Formula], &[Formula]) -> Vec<Formula>>;
/// PC witness: arguments `(φ⃗, ψ⃗)`, result `(φ⃗) ⋎ (ψ⃗)`.
pub type PcScheme = Box<dyn Fn(&[Formula], &[Formula]) -> Vec<Formula>>;

/// The optional witness families of a logic.
pub struct WitnessFamily {
    pub il: Option<IlScheme>,
    pub dt: Option<DtScheme>,
    pub pc: Option<PcScheme>,
}

/// A protoalgebraic logic profile: witness families plus the
/// protoalgebraicity set `Δ(x, y)` (over variables `x`, `y`) and a theorem
/// `⊤(x)` (over variable `x`).
pub struct LogicProfile {
    pub name: String,
    pub witnesses: WitnessFamily,
    pub delta: Vec<Formula>,
    pub top: Formula,
    /// Whether the logic has a conjunction (enables the `k = 1`
    /// simplifications).
    pub has_conjunction: bool,
}

/// Right-fold implication chain `γ1 → (γ2 → (… (γn → φ)…))`; the empty
/// chain is `φ` itself.
pub fn curry(premises: &[Formula], target: Formula) -> Formula {
    premises
        .iter()
        .rev()
        .fold(target, |acc, p| Formula::imp(p.clone(), acc))
}

/// The IPC profile: `∼ₙ = {x1→(…(xn→0))}`,
/// `⇒ₙₘ = {x1→(…(xn→y_k)) : k ≤ m}`, `⋎ₙₘ = {xᵢ ∨ yⱼ}`, `Δ = {x→y}`,
/// `⊤ = x→x`.
pub fn ipc_profile() -> LogicProfile {
    let il: IlScheme = Box::new(|phis| vec![curry(phis, Formula::Const0)]);
    let dt: DtScheme =
        Box::new(|phis, psis| psis.iter().map(|p| curry(phis, p.clone())).collect());
    let pc: PcScheme = Box::new(|phis, psis| {
        let mut out = Vec::new();
        for a in phis {
            for b in psis {
                out.push(Formula::or(a.clone(), b.clone()));
            }
        }
        out
    });
    LogicProfile {
        name: "IPC".into(),
        witnesses: WitnessFamily {
            il: Some(il),
            dt: Some(dt),
            pc: Some(pc),
        },
        delta: vec![Formula::imp(Formula::var("x"), Formula::var("y"))],
        top: Formula::imp(Formula::var("x"), Formula::var("x")),
        has_conjunction: true,
    }
}

/// True iff every connective of `f` is supported by the profile's witness
/// families: `0`/`¬` need the IL, `→` the DT, `∨` the PC; `∧` needs
/// nothing.
pub fn compatible(f: &Formula, profile: &LogicProfile) -> bool {
    f.connectives().iter().all(|c| match *c {
        "0" | "~" => profile.witnesses.il.is_some(),
        "->" => profile.witnesses.dt.is_some(),
        "|" => profile.witnesses.pc.is_some(),
        "&" | "1" => true,
        _ => false,
    })
}

/// The doubled variable `v` copy `j` (1-based), named `{v}_{j}`.
pub fn doubled_var(v: &str, j: usize) -> Formula {
    Formula::Var(format!("{v}_{j}"))
}

fn substitute(f: &Formula, var: &str, by: &Formula) -> Formula {
    match f {
        Formula::Var(v) if v == var => by.clone(),
        Formula::Var(_) | Formula::Const0 | Formula::Const1 => f.clone(),
        Formula::And(l, r) => Formula::and(substitute(l, var, by), substitute(r, var, by)),
        Formula::Or(l, r) => Formula::or(substitute(l, var, by), substitute(r, var, by)),
        Formula::Imp(l, r) => Formula::imp(substitute(l, var, by), substitute(r, var, by)),
        Formula::Not(a) => Formula::not(substitute(a, var, by)),
        Formula::Box_(a) => Formula::box_(substitute(a, var, by)),
        Formula::Diamond(a) => Formula::diamond(substitute(a, var, by)),
    }
}

/// The finite set `φᵏ(x1¹,…,xnᵏ)` associated with a compatible formula:
/// variables double into `k` copies, `∧` unions, `¬` applies `∼ₘ`, `→`
/// applies `⇒ₘₜ`, `∨` applies `⋎ₘₜ`; `1ᵏ = {⊤(x1¹)}` and
/// `0ᵏ = {x1¹} ∪ ∼₁(x1¹)`.
pub fn phi_k(f: &Formula, k: usize, profile: &LogicProfile) -> Result<Vec<Formula>, MetaError> {
    assert!(k >= 1);
    let anchor = f
        .variables()
        .first()
        .cloned()
        .unwrap_or_else(|| "x1".to_string());
    let anchor = doubled_var(&anchor, 1);
    phi_k_inner(f, k, profile, &anchor)
}

fn phi_k_inner(
    f: &Formula,
    k: usize,
    profile: &LogicProfile,
    anchor: &Formula,
) -> Result<Vec<Formula>, MetaError> {
    let il = |args: &[Formula]| -> Result<Vec<Formula>, MetaError> {
        profile
            .witnesses
            .il
            .as_ref()
            .map(|s| s(args))
            .ok_or(MetaError::NotCompatible("~"))
    };
    match f {
        Formula::Var(v) => Ok((1..=k).map(|j| doubled_var(v, j)).collect()),
        Formula::Const1 => Ok(vec![substitute(&profile.top, "x", anchor)]),
        Formula::Const0 => {
            let mut out = vec![anchor.clone()];
            out.extend(il(std::slice::from_ref(anchor))?);
            Ok(dedup(out))
        }
        Formula::And(l, r) => {
            let mut out = phi_k_inner(l, k, profile, anchor)?;
            out.extend(phi_k_inner(r, k, profile, anchor)?);
            Ok(dedup(out))
        }
        Formula::Not(a) => {
            let inner = phi_k_inner(a, k, profile, anchor)?;
            il(&inner)
        }
        Formula::Imp(l, r) => {
            let (a, b) = (
                phi_k_inner(l, k, profile, anchor)?,
                phi_k_inner(r, k, profile, anchor)?,
            );
            profile
                .witnesses
                .dt
                .as_ref()
                .map(|s| s(&a, &b))
                .ok_or(MetaError::NotCompatible("->"))
        }
        Formula::Or(l, r) => {
            let (a, b) = (
                phi_k_inner(l, k, profile, anchor)?,
                phi_k_inner(r, k, profile, anchor)?,
            );
            profile
                .witnesses
                .pc
                .as_ref()
                .map(|s| s(&a, &b))
                .ok_or(MetaError::NotCompatible("|"))
        }
        Formula::Box_(_) | Formula::Diamond(_) => Err(MetaError::NotCompatible("[] / <>")),
    }
}

fn dedup(v: Vec<Formula>) -> Vec<Formula> {
    let mut out = Vec::new();
    for f in v {
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Metarules
// ---------------------------------------------------------------------------

/// A schematic metarule: every premise and the conclusion share a symbolic
/// context `Γ` and conclusion formula `ψ`; each premise adds a finite set
/// of formulas (over the doubled schematic variables) to `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaRule {
    pub premises: Vec<Vec<Formula>>,
    pub k: usize,
    /// Set on the `k = 1` instance when the logic has a conjunction, where
    /// the single copy of each schematic variable suffices.
    pub simplified: bool,
}

impl MetaRule {
    /// Human-readable inference-rule block.
    pub fn display(&self) -> String {
        let prem: Vec<String> = self
            .premises
            .iter()
            .map(|set| {
                let fs: Vec<String> = set.iter().map(|f| f.to_string()).collect();
                format!("G, {} |> psi", fs.join(", "))
            })
            .collect();
        let top = prem.join("    ");
        let width = top.chars().count().max(8);
        format!("{top}\n{}\nG |> psi", "-".repeat(width))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "simplified": self.simplified,
            "premises": self
                .premises
                .iter()
                .map(|set| set.iter().map(|f| f.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "conclusion": "G |> psi",
        })
    }
}

/// The metarule family `R(Φ)` up to the bound: for each `k ≤ k_max`, the
/// rule with one premise `Γ, φᵢᵏ(γ⃗) ▷ ψ` per quasiequation premise and
/// conclusion `Γ ▷ ψ`. The doubled variables play the role of the
/// schematic `γ` tuple.
pub fn metarules(
    q: &Quasiequation,
    profile: &LogicProfile,
    k_max: usize,
) -> Result<Vec<MetaRule>, MetaError> {
    let mut out = Vec::new();
    for k in 1..=k_max {
        let premises = q
            .premises
            .iter()
            .map(|p| phi_k(p, k, profile))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(MetaRule {
            premises,
            k,
            simplified: k == 1 && profile.has_conjunction,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Characteristic theorem sets and A(Φ)
// ---------------------------------------------------------------------------

/// A variable not occurring in any premise's doubled set.
fn fresh_y(q: &Quasiequation) -> Formula {
    // Doubled variables are `{v}_{j}`, so a bare `y` never collides; guard
    // anyway against exotic inputs.
    let used: Vec<String> = q.premises.iter().flat_map(|p| p.variables()).collect();
    let mut name = "y".to_string();
    let mut i = 0usize;
    while used.contains(&name) {
        i += 1;
        name = format!("y{i}");
    }
    Formula::Var(name)
}

/// The DT-form characteristic theorem set
/// `((φ₁ᵏ ⇒ y) ∪ ⋯ ∪ (φₘᵏ ⇒ y)) ⇒ y`.
pub fn characteristic_theorems_dt(
    q: &Quasiequation,
    profile: &LogicProfile,
    k: usize,
) -> Result<Vec<Formula>, MetaError> {
    let dt = profile
        .witnesses
        .dt
        .as_ref()
        .ok_or(MetaError::MissingWitness("DT"))?;
    let y = fresh_y(q);
    let mut inner = Vec::new();
    for p in &q.premises {
        let set = phi_k(p, k, profile)?;
        inner.extend(dt(&set, std::slice::from_ref(&y)));
    }
    let inner = dedup(inner);
    Ok(dt(&inner, std::slice::from_ref(&y)))
}

/// The PC-form characteristic theorem set `φ₁ᵏ ⋎ ⋯ ⋎ φₘᵏ` (left fold).
pub fn characteristic_theorems_pc(
    q: &Quasiequation,
    profile: &LogicProfile,
    k: usize,
) -> Result<Vec<Formula>, MetaError> {
    let pc = profile
        .witnesses
        .pc
        .as_ref()
        .ok_or(MetaError::MissingWitness("PC"))?;
    let mut sets = q
        .premises
        .iter()
        .map(|p| phi_k(p, k, profile))
        .collect::<Result<Vec<_>, _>>()?;
    let mut acc = sets.remove(0);
    for next in sets {
        acc = pc(&acc, &next);
    }
    Ok(acc)
}

/// The axiom set `A(Φ) = ⋃ {((φ₁ᵏ → y) ∪ ⋯ ∪ (φₘᵏ → y)) → y : k ≤ k_max}`,
/// where `Γ → φ` is the curried singleton
/// `γ₁ → (γ₂ → (…(γₙ → φ)…))` with arguments consumed left to right in
/// premise order.
pub fn a_phi(
    q: &Quasiequation,
    profile: &LogicProfile,
    k_max: usize,
) -> Result<Vec<Formula>, MetaError> {
    let y = fresh_y(q);
    let mut out = Vec::new();
    for k in 1..=k_max {
        let mut inner = Vec::new();
        for p in &q.premises {
            let set = phi_k(p, k, profile)?;
            inner.push(curry(&set, y.clone()));
        }
        out.push(curry(&inner, y.clone()));
    }
    Ok(dedup(out))
}

// ---------------------------------------------------------------------------
// IPC on Heyting algebras
// ---------------------------------------------------------------------------

/// IPC deductive-filter generation on a finite Heyting algebra: the filter
/// generated by a subset is the principal upset of its meet; the empty set
/// generates `{1}`.
pub fn ipc_filter_generate(a: &FiniteAlgebra, gens: u64) -> Result<u64, MetaError> {
    if !a.has_class(ClassTag::Ha) {
        return Err(MetaError::NotHeyting);
    }
    let mut m = a.one().expect("HA has a top");
    for e in 0..a.size() {
        if gens >> e & 1 == 1 {
            m = a.meet_of(m, e);
        }
    }
    Ok(a.poset().upset_of(m))
}

/// The semilattice of compact (= finitely generated = principal) IPC
/// deductive filters of a finite Heyting algebra, ordered by the superset
/// relation; it is order-isomorphic to the algebra itself, with element `e`
/// corresponding to the filter `↑e`.
pub fn compact_filter_semilattice(a: &FiniteAlgebra) -> Result<FiniteAlgebra, MetaError> {
    if !a.has_class(ClassTag::Ha) {
        return Err(MetaError::NotHeyting);
    }
    let labels: Vec<String> = (0..a.size()).map(|e| format!("F{e}")).collect();
    let fic = FiniteAlgebra::from_poset_meets(labels, a.poset())
        .expect("the order of an HA carries all meets");
    Ok(fic)
}

/// The IPC spectrum of a finite Heyting algebra: the poset of meet
/// irreducible deductive filters, which for IPC coincides with the
/// meet-irreducible lattice-filter poset.
pub fn spec_ipc(a: &FiniteAlgebra) -> Result<FinitePoset, MetaError> {
    if !a.has_class(ClassTag::Ha) {
        return Err(MetaError::NotHeyting);
    }
    Ok(meet_irreducible_filters(a).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{chain, diamond, Assignment};
    use crate::correspondence::correspondent;
    use crate::fomodel::check_fo;
    use crate::syntax::{
        btw, btw_quasiequation, excluded_middle_quasiequation, goedel_dummett_quasiequation,
        parse_formula, weml_quasiequation,
    };

    fn ipc_il(args: &[Formula]) -> Vec<Formula> {
        (ipc_profile().witnesses.il.unwrap())(args)
    }

    #[test]
    fn ipc_witness_schemes() {
        let p = ipc_profile();
        let x1 = Formula::var("x1");
        let x2 = Formula::var("x2");
        let y1 = Formula::var("y1");
        assert_eq!(
            ipc_il(&[x1.clone(), x2.clone()]),
            vec![parse_formula("x1 -> (x2 -> 0)", false).unwrap()]
        );
        let dt = p.witnesses.dt.as_ref().unwrap();
        assert_eq!(
            dt(&[x1.clone(), x2.clone()], &[y1.clone()]),
            vec![Formula::imp(x1.clone(), Formula::imp(x2.clone(), y1.clone()))]
        );
        let pc = p.witnesses.pc.as_ref().unwrap();
        assert_eq!(
            pc(&[x1.clone()], &[y1.clone()]),
            vec![Formula::or(x1.clone(), y1.clone())]
        );
        assert_eq!(p.top, Formula::imp(Formula::var("x"), Formula::var("x")));
        assert_eq!(
            p.delta,
            vec![Formula::imp(Formula::var("x"), Formula::var("y"))]
        );
    }

    #[test]
    fn compatibility() {
        let ipc = ipc_profile();
        assert!(compatible(&btw(1), &ipc));
        let il_only = LogicProfile {
            name: "IL-only".into(),
            witnesses: WitnessFamily {
                il: Some(Box::new(|args| vec![curry(args, Formula::Const0)])),
                dt: None,
                pc: None,
            },
            delta: ipc.delta.clone(),
            top: ipc.top.clone(),
            has_conjunction: true,
        };
        // btw(1) itself contains ∨, so it is not IL-only compatible, but
        // its quasiequation premises are.
        assert!(!compatible(&btw(1), &il_only));
        for p in &btw_quasiequation(1).premises {
            assert!(compatible(p, &il_only));
        }
        assert!(!compatible(
            &parse_formula("x1 -> x2", false).unwrap(),
            &il_only
        ));
        let empty = LogicProfile {
            name: "bare".into(),
            witnesses: WitnessFamily {
                il: None,
                dt: None,
                pc: None,
            },
            delta: ipc.delta.clone(),
            top: ipc.top.clone(),
            has_conjunction: true,
        };
        assert!(compatible(&parse_formula("x1 & x2", false).unwrap(), &empty));
    }

    #[test]
    fn phi_k_clauses() {
        let ipc = ipc_profile();
        let x1 = parse_formula("x1", false).unwrap();
        assert_eq!(
            phi_k(&x1, 2, &ipc).unwrap(),
            vec![Formula::var("x1_1"), Formula::var("x1_2")]
        );
        let notx1 = parse_formula("~x1", false).unwrap();
        assert_eq!(
            phi_k(&notx1, 1, &ipc).unwrap(),
            vec![Formula::imp(Formula::var("x1_1"), Formula::Const0)]
        );
        // (x1→x2)^k = {x1_1→(…(x1_k→x2_i)) : i ≤ k}.
        let imp = parse_formula("x1 -> x2", false).unwrap();
        let got = phi_k(&imp, 2, &ipc).unwrap();
        let mk = |i: usize| {
            Formula::imp(
                Formula::var("x1_1"),
                Formula::imp(Formula::var("x1_2"), Formula::var(&format!("x2_{i}"))),
            )
        };
        assert_eq!(got, vec![mk(1), mk(2)]);
    }

    #[test]
    fn em_metarule_shape() {
        let ipc = ipc_profile();
        let rules = metarules(&excluded_middle_quasiequation(), &ipc, 1).unwrap();
        assert_eq!(rules.len(), 1);
        let r = &rules[0];
        assert!(r.simplified);
        assert_eq!(r.premises.len(), 2);
        assert_eq!(r.premises[0], vec![Formula::var("x1_1")]);
        assert_eq!(r.premises[1], ipc_il(&[Formula::var("x1_1")]));
        assert!(r.display().contains("G |> psi"));
    }

    #[test]
    fn btw_metarules_have_il_shape() {
        // Premise i of the BTWL_n family is ∼(∼(γ_i) ∪ {γ_j : j < i}).
        let ipc = ipc_profile();
        let rules = metarules(&btw_quasiequation(2), &ipc, 2).unwrap();
        assert_eq!(rules.len(), 2);
        for r in &rules {
            assert_eq!(r.premises.len(), 3);
            for (i, set) in r.premises.iter().enumerate() {
                let i = i + 1;
                let mut args: Vec<Formula> =
                    ipc_il(&(1..=r.k).map(|t| doubled_var(&format!("x{i}"), t)).collect::<Vec<_>>());
                for j in 1..i {
                    for t in 1..=r.k {
                        args.push(doubled_var(&format!("x{j}"), t));
                    }
                }
                assert_eq!(set, &ipc_il(&args));
            }
        }
    }

    #[test]
    fn characteristic_dt_for_em() {
        let ipc = ipc_profile();
        let got = characteristic_theorems_dt(&excluded_middle_quasiequation(), &ipc, 1).unwrap();
        // ((x1_1 → y) → (((x1_1 → 0) → y) → y)).
        let x = Formula::var("x1_1");
        let y = Formula::var("y");
        let expect = Formula::imp(
            Formula::imp(x.clone(), y.clone()),
            Formula::imp(
                Formula::imp(Formula::imp(x.clone(), Formula::Const0), y.clone()),
                y.clone(),
            ),
        );
        assert_eq!(got, vec![expect]);
    }

    #[test]
    fn characteristic_pc_for_gd() {
        let ipc = ipc_profile();
        let got = characteristic_theorems_pc(&goedel_dummett_quasiequation(), &ipc, 1).unwrap();
        let a = Formula::imp(Formula::var("x1_1"), Formula::var("x2_1"));
        let b = Formula::imp(Formula::var("x2_1"), Formula::var("x1_1"));
        assert_eq!(got, vec![Formula::or(a, b)]);
    }

    #[test]
    fn a_phi_for_gd_matches_display() {
        let ipc = ipc_profile();
        let got = a_phi(&goedel_dummett_quasiequation(), &ipc, 1).unwrap();
        // ψ1¹ → (ψ2¹ → y) with ψi¹ = (x_i→x_j curried) → y.
        let y = Formula::var("y");
        let psi1 = Formula::imp(
            Formula::imp(Formula::var("x1_1"), Formula::var("x2_1")),
            y.clone(),
        );
        let psi2 = Formula::imp(
            Formula::imp(Formula::var("x2_1"), Formula::var("x1_1")),
            y.clone(),
        );
        assert_eq!(got, vec![Formula::imp(psi1, Formula::imp(psi2, y))]);
        assert!(a_phi(&goedel_dummett_quasiequation(), &ipc, 0).unwrap().is_empty());
    }

    #[test]
    fn a_phi_em_matches_quasiequation_on_small_has() {
        let ipc = ipc_profile();
        let axioms = a_phi(&excluded_middle_quasiequation(), &ipc, 1).unwrap();
        for alg in [chain(2), chain(3), diamond()] {
            let by_axiom = axioms
                .iter()
                .all(|f| alg.validates_formula(f).unwrap());
            let by_quasi = alg
                .validates_quasiequation(&excluded_middle_quasiequation())
                .unwrap();
            assert_eq!(by_axiom, by_quasi, "on algebra of size {}", alg.size());
        }
    }

    #[test]
    fn filter_generation_and_compact_semilattice() {
        let a = chain(3);
        // X = {a} generates ↑a = {a, 1}.
        assert_eq!(ipc_filter_generate(&a, 0b010).unwrap(), 0b110);
        assert_eq!(ipc_filter_generate(&a, 0).unwrap(), 0b100);
        let d = diamond();
        let fic = compact_filter_semilattice(&d).unwrap();
        assert_eq!(fic.size(), d.size());
        for i in 0..d.size() {
            for j in 0..d.size() {
                assert_eq!(d.leq(i, j), fic.leq(i, j));
            }
        }
        assert!(compact_filter_semilattice(&crate::algebra::n5()).is_err());
    }

    #[test]
    fn filter_generation_lemma_ipc_instance() {
        // Fg(φᵏ(a⃗)) = φ evaluated at the meets ⋀ⱼ aᵢʲ (using the
        // compact-filter semilattice ≅ A).
        let ipc = ipc_profile();
        let corpus = [
            parse_formula("~x1", false).unwrap(),
            parse_formula("x1 -> x2", false).unwrap(),
            parse_formula("x1 | ~x1", false).unwrap(),
            parse_formula("(x1 & x2) -> x1", false).unwrap(),
        ];
        for alg in [chain(3), diamond()] {
            for f in &corpus {
                let vars = f.variables();
                for k in 1..=2usize {
                    let set = phi_k(f, k, &ipc).unwrap();
                    let n = alg.size();
                    let total = n.pow((vars.len() * k) as u32);
                    for code in 0..total {
                        let mut c = code;
                        let mut sigma = Assignment::new();
                        let mut meets = Assignment::new();
                        for v in &vars {
                            let mut m = alg.one().unwrap();
                            for j in 1..=k {
                                let e = c % n;
                                c /= n;
                                sigma.insert(format!("{v}_{j}"), e);
                                m = alg.meet_of(m, e);
                            }
                            meets.insert(v.clone(), m);
                        }
                        let mut lhs = alg.one().unwrap();
                        for member in &set {
                            lhs = alg.meet_of(lhs, alg.eval_formula(member, &sigma).unwrap());
                        }
                        let rhs = alg.eval_formula(f, &meets).unwrap();
                        assert_eq!(lhs, rhs, "formula {f}, k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn spec_ipc_fixtures() {
        let s = spec_ipc(&chain(3)).unwrap();
        assert_eq!(s.size(), 2);
        assert!(s.leq(0, 1) && !s.leq(1, 0));
        assert_eq!(spec_ipc(&chain(1)).unwrap().size(), 0);
        let d = spec_ipc(&diamond()).unwrap();
        assert_eq!(d.size(), 2);
        assert!(!d.leq(0, 1) && !d.leq(1, 0));
    }

    #[test]
    fn abstract_sahlqvist_ipc_instance_small() {
        let ipc = ipc_profile();
        let corpus = [
            excluded_middle_quasiequation(),
            goedel_dummett_quasiequation(),
            weml_quasiequation(),
        ];
        for q in &corpus {
            let tr = correspondent(q).unwrap();
            let theorems = characteristic_theorems_dt(q, &ipc, 1).unwrap();
            for alg in [chain(2), chain(3), chain(4), diamond()] {
                let lhs = theorems
                    .iter()
                    .all(|f| alg.validates_formula(f).unwrap());
                let rhs = check_fo(&spec_ipc(&alg).unwrap(), &tr).unwrap();
                assert_eq!(lhs, rhs, "{} on size {}", q.display(), alg.size());
            }
        }
    }
}
