//! End-to-end acceptance suite. Each test checks one release criterion over
//! exhaustively enumerated small structures and prints a single summary
//! line; sweeps with a runtime budget assert it.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use sahlq_core::algebra::{
    a_plus, chain, epsilon_is_embedding, figure_psl, up_algebra, v_poset, ClassTag,
    Language,
};
use sahlq_core::correspondence::{
    btw_condition, correspondent, discreteness, gmt_translate, principal_up_directed,
    root_system, validates_modal_powerset,
};
use sahlq_core::duality::{
    check_partial_map_kind, homomorphisms, lower_star, meet_irreducible_filters,
    required_tags_for_class, up_of_map,
};
use sahlq_core::fomodel::{
    check_fo, enumerate_algebras, enumerate_posets, fo_equivalent, ClassFilter,
    EnumerationConfig,
};
use sahlq_core::metalogic::{characteristic_theorems_dt, ipc_profile, phi_k, spec_ipc};
use sahlq_core::substructural::{
    bot_element, broken_assoc_fixture, check_linear_correspondence, enumerate_fle,
    fle_validate, godel_chain, ha_as_fle, ill_compatible, mv4, spec_congruences,
};
use sahlq_core::syntax::{
    btw, btw_quasiequation, classify_sahlqvist, excluded_middle,
    excluded_middle_quasiequation, goedel_dummett, goedel_dummett_quasiequation,
    parse_formula, weml, weml_quasiequation, Formula, Quasiequation, SahlqvistClass,
};

/// The named quasiequations every sweep exercises.
fn quasiequation_corpus() -> Vec<(&'static str, Quasiequation)> {
    vec![
        ("em", excluded_middle_quasiequation()),
        ("gd", goedel_dummett_quasiequation()),
        ("weml", weml_quasiequation()),
        ("btw1", btw_quasiequation(1)),
        ("btw2", btw_quasiequation(2)),
    ]
}

/// The six named axioms as plain formulas.
fn formula_corpus() -> Vec<Formula> {
    vec![
        excluded_middle(),
        goedel_dummett(),
        weml(),
        btw(1),
        btw(2),
        btw(3),
    ]
}

fn finish(n: usize, name: &str, start: Instant, budget: Option<Duration>, detail: String) {
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            println!("criterion {n} ({name}): fail — over budget ({elapsed:.2?} > {b:?})");
            panic!("criterion {n} exceeded its runtime budget: {elapsed:.2?}");
        }
    }
    println!("criterion {n} ({name}): pass — {detail} in {elapsed:.2?}");
}

#[test]
fn criterion_01_recognizer_regression() {
    let start = Instant::now();
    for f in formula_corpus() {
        assert_eq!(
            classify_sahlqvist(&f, false),
            SahlqvistClass::SahlqvistFormula,
            "criterion 1: fail — {f} not recognized"
        );
    }
    for (name, q) in quasiequation_corpus() {
        assert!(q.is_sahlqvist(false), "criterion 1: fail — {name}");
    }
    assert!(btw_quasiequation(3).is_sahlqvist(false), "criterion 1: fail — btw3");
    let peirce_like = parse_formula("~~x1 -> x1", false).unwrap();
    assert_ne!(
        classify_sahlqvist(&peirce_like, false),
        SahlqvistClass::SahlqvistFormula,
        "criterion 1: fail — double-negation elimination misclassified"
    );
    finish(
        1,
        "recognizer regression",
        start,
        Some(Duration::from_secs(1)),
        "6 axioms + 6 quasiequations accepted, 1 rejected".into(),
    );
}

#[test]
fn criterion_02_translation_soundness_sweep() {
    let start = Instant::now();
    let posets = enumerate_posets(&EnumerationConfig::posets(4));
    let mut checked = 0usize;
    for x in &posets {
        let up = up_algebra(x, Language::full());
        for f in formula_corpus() {
            let algebraic = up.validates_formula(&f).unwrap();
            let modal = validates_modal_powerset(x, &gmt_translate(&f).unwrap());
            assert_eq!(
                algebraic, modal,
                "criterion 2: fail — disagreement for {f} on |X|={}",
                x.size()
            );
            checked += 1;
        }
    }
    finish(
        2,
        "modal translation soundness",
        start,
        Some(Duration::from_secs(60)),
        format!("{checked} (poset, formula) pairs agree"),
    );
}

#[test]
fn criterion_03_correspondence_oracle() {
    let start = Instant::now();
    let posets = enumerate_posets(&EnumerationConfig::posets(5));
    let mut checked = 0usize;
    for (name, q) in quasiequation_corpus() {
        let tr = correspondent(&q).unwrap();
        for x in &posets {
            let fo = check_fo(x, &tr).unwrap();
            let alg = up_algebra(x, Language::full())
                .validates_quasiequation(&q)
                .unwrap();
            assert_eq!(fo, alg, "criterion 3: fail — {name} on |X|={}", x.size());
            checked += 1;
        }
        let named = match name {
            "em" => discreteness(),
            "gd" => root_system(),
            "weml" | "btw1" => principal_up_directed(),
            "btw2" => btw_condition(2),
            _ => unreachable!(),
        };
        assert!(
            fo_equivalent(&tr, &named, 5).unwrap(),
            "criterion 3: fail — correspondent of {name} differs from its named condition"
        );
    }
    finish(
        3,
        "correspondence oracle",
        start,
        Some(Duration::from_secs(300)),
        format!("{checked} poset checks, 5 named equivalences"),
    );
}

#[test]
fn criterion_04_canonicity_suite() {
    let start = Instant::now();
    let psls = enumerate_algebras(&EnumerationConfig::algebras(6, ClassFilter::Psl));
    let isls = enumerate_algebras(&EnumerationConfig::algebras(6, ClassFilter::Isl));
    let psl_corpus = ["em", "weml", "btw1", "btw2"];
    let isl_corpus = ["gd"];
    let mut checked = 0usize;
    for (algebras, names) in [(&psls, &psl_corpus[..]), (&isls, &isl_corpus[..])] {
        for (name, q) in quasiequation_corpus() {
            if !names.contains(&name) {
                continue;
            }
            let tr = correspondent(&q).unwrap();
            for a in algebras.iter() {
                let direct = a.validates_quasiequation(&q).unwrap();
                let (dual, _) = meet_irreducible_filters(a);
                let up = up_algebra(&dual, Language::full());
                if direct {
                    assert!(
                        up.validates_quasiequation(&q).unwrap(),
                        "criterion 4: fail — {name} lost through the dual on |A|={}",
                        a.size()
                    );
                }
                assert_eq!(
                    direct,
                    check_fo(&dual, &tr).unwrap(),
                    "criterion 4: fail — {name} verdict differs on the dual of |A|={}",
                    a.size()
                );
                checked += 1;
            }
        }
    }
    finish(
        4,
        "canonicity suite",
        start,
        Some(Duration::from_secs(600)),
        format!(
            "{checked} checks over {} PSLs and {} ISLs",
            psls.len(),
            isls.len()
        ),
    );
}

#[test]
fn criterion_05_completion_suite() {
    let start = Instant::now();
    let psls = enumerate_algebras(&EnumerationConfig::algebras(6, ClassFilter::Psl));
    let psl_corpus: Vec<(&str, Quasiequation)> = quasiequation_corpus()
        .into_iter()
        .filter(|(name, _)| *name != "gd")
        .collect();
    for a in &psls {
        let (plus, eps) = a_plus(a).unwrap();
        assert!(
            epsilon_is_embedding(a, &plus, &eps),
            "criterion 5: fail — embedding broken on |A|={}",
            a.size()
        );
        assert!(
            plus.has_class(ClassTag::Ha),
            "criterion 5: fail — completion of |A|={} is not a Heyting algebra",
            a.size()
        );
        for (name, q) in &psl_corpus {
            if a.validates_quasiequation(q).unwrap() {
                assert!(
                    plus.validates_quasiequation(q).unwrap(),
                    "criterion 5: fail — {name} lost in the completion of |A|={}",
                    a.size()
                );
            }
        }
    }
    finish(
        5,
        "completion suite",
        start,
        None,
        format!("{} PSLs embed into Heyting completions", psls.len()),
    );
}

#[test]
fn criterion_06_separating_fixture() {
    let start = Instant::now();
    let a = figure_psl();
    let one = a.one().unwrap();
    // Context-free reading holds: anything above both ¬x and ¬¬x is 1.
    for x in 0..a.size() {
        let nx = a.neg_of(x).unwrap();
        let nnx = a.neg_of(nx).unwrap();
        for z in 0..a.size() {
            if a.leq(nx, z) && a.leq(nnx, z) {
                assert_eq!(z, one, "criterion 6: fail — context-free reading broken");
            }
        }
    }
    // The contextual quasiequation fails, and every counterexample pins the
    // context to y = b, z = c; x = a is among the failing values.
    let q = weml_quasiequation();
    assert!(
        !a.validates_quasiequation(&q).unwrap(),
        "criterion 6: fail — fixture unexpectedly validates the quasiequation"
    );
    let (va, vb, vc) = (3usize, 6usize, 4usize);
    let mut failing_x = Vec::new();
    for x in 0..a.size() {
        let nx = a.neg_of(x).unwrap();
        let nnx = a.neg_of(nx).unwrap();
        for y in 0..a.size() {
            for z in 0..a.size() {
                let premises_hold =
                    a.leq(a.meet_of(nx, y), z) && a.leq(a.meet_of(nnx, y), z);
                if premises_hold && !a.leq(y, z) {
                    assert_eq!(
                        (y, z),
                        (vb, vc),
                        "criterion 6: fail — counterexample outside the b/c context"
                    );
                    failing_x.push(x);
                }
            }
        }
    }
    assert!(
        failing_x.contains(&va),
        "criterion 6: fail — x = a is not a counterexample"
    );
    finish(
        6,
        "separating fixture",
        start,
        None,
        format!(
            "context-free form holds, contextual form fails exactly at y=b, z=c (x in {failing_x:?})"
        ),
    );
}

#[test]
fn criterion_07_duality_suite() {
    let start = Instant::now();
    let classes: [(ClassTag, ClassFilter, Language); 5] = [
        (ClassTag::Psl, ClassFilter::Psl, Language::psl()),
        (ClassTag::Isl, ClassFilter::Isl, Language::isl()),
        (
            ClassTag::BIsl,
            ClassFilter::BIsl,
            Language { and: true, or: false, imp: true, not: true, zero: true, one: true },
        ),
        (
            ClassTag::Pdl,
            ClassFilter::Pdl,
            Language { and: true, or: true, imp: false, not: true, zero: true, one: true },
        ),
        (ClassTag::Ha, ClassFilter::Ha, Language::full()),
    ];
    let mut checked = 0usize;
    for (tag, filter, lang) in classes {
        let required = required_tags_for_class(tag);
        let algebras = enumerate_algebras(&EnumerationConfig::algebras(5, filter));
        for a in &algebras {
            for b in &algebras {
                // Deterministic subsample: the enumeration order is fixed,
                // and so is the truncation below.
                for f in homomorphisms(a, b, lang, 32, 0).iter().take(16) {
                    let p = lower_star(a, b, f, lang).unwrap();
                    let tags = check_partial_map_kind(&p);
                    assert!(
                        required.iter().all(|t| tags.contains(t)),
                        "criterion 7: fail — dual map misses a {tag:?} tag"
                    );
                    let injective =
                        f.iter().collect::<BTreeSet<_>>().len() == f.len();
                    if injective {
                        assert!(
                            p.is_surjective(),
                            "criterion 7: fail — dual of an injective map not surjective"
                        );
                    }
                    if p.is_surjective() {
                        let (_, _, up_map) = up_of_map(&p, tag).unwrap();
                        let distinct =
                            up_map.iter().collect::<BTreeSet<_>>().len() == up_map.len();
                        assert!(
                            distinct,
                            "criterion 7: fail — upset functor of a surjection not injective"
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    finish(
        7,
        "duality suite",
        start,
        None,
        format!("{checked} dual maps across 5 classes"),
    );
}

#[test]
fn criterion_08_witness_power_suite() {
    let start = Instant::now();
    let ipc = ipc_profile();
    let heyting = enumerate_algebras(&EnumerationConfig::algebras(5, ClassFilter::Ha));
    // Part 1: witness powers generate the same filters as meets of the
    // underlying tuples, on every small Heyting algebra.
    let lemma_corpus = [
        parse_formula("~x1", false).unwrap(),
        parse_formula("x1 -> x2", false).unwrap(),
        parse_formula("x1 | ~x1", false).unwrap(),
        parse_formula("(x1 & x2) -> x1", false).unwrap(),
    ];
    let mut lemma_checked = 0usize;
    for a in &heyting {
        let n = a.size();
        for f in &lemma_corpus {
            let vars = f.variables();
            for k in 1..=2usize {
                let set = phi_k(f, k, &ipc).unwrap();
                let total = n.pow((vars.len() * k) as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut sigma = sahlq_core::algebra::Assignment::new();
                    let mut meets = sahlq_core::algebra::Assignment::new();
                    for v in &vars {
                        let mut m = a.one().unwrap();
                        for j in 1..=k {
                            let e = c % n;
                            c /= n;
                            sigma.insert(format!("{v}_{j}"), e);
                            m = a.meet_of(m, e);
                        }
                        meets.insert(v.clone(), m);
                    }
                    let mut lhs = a.one().unwrap();
                    for member in &set {
                        lhs = a.meet_of(lhs, a.eval_formula(member, &sigma).unwrap());
                    }
                    assert_eq!(
                        lhs,
                        a.eval_formula(f, &meets).unwrap(),
                        "criterion 8: fail — witness power of {f} (k={k}) on |A|={n}"
                    );
                    lemma_checked += 1;
                }
            }
        }
    }
    // Part 2: validity of the characteristic theorems matches the spectrum
    // satisfying the correspondent.
    let mut spectra_checked = 0usize;
    for (name, q) in quasiequation_corpus() {
        let tr = correspondent(&q).unwrap();
        let theorems = characteristic_theorems_dt(&q, &ipc, 1).unwrap();
        for a in &heyting {
            let by_theorems = theorems.iter().all(|f| a.validates_formula(f).unwrap());
            let by_spectrum = check_fo(&spec_ipc(a).unwrap(), &tr).unwrap();
            assert_eq!(
                by_theorems, by_spectrum,
                "criterion 8: fail — {name} readings disagree on |A|={}",
                a.size()
            );
            spectra_checked += 1;
        }
    }
    finish(
        8,
        "witness powers and characteristic theorems",
        start,
        Some(Duration::from_secs(600)),
        format!("{lemma_checked} tuple instances, {spectra_checked} spectrum checks"),
    );
}

#[test]
fn criterion_09_linear_suite() {
    let start = Instant::now();
    for n in 2..=5 {
        let g = godel_chain(n);
        fle_validate(&g).unwrap();
        assert_eq!(bot_element(&g), 0, "criterion 9: fail — bottom term off on chain {n}");
    }
    fle_validate(&mv4()).unwrap();
    fle_validate(&ha_as_fle(&chain(3)).unwrap()).unwrap();
    assert!(
        fle_validate(&broken_assoc_fixture()).is_err(),
        "criterion 9: fail — the broken fixture slipped through validation"
    );
    // Sound direction of the linear correspondence on every enumerated
    // algebra compatible with the quasiequation's witness schemes.
    let algebras = enumerate_fle(6);
    let mut checked = 0usize;
    for a in &algebras {
        let mut spectrum_cache = None;
        for (name, q) in quasiequation_corpus() {
            if !ill_compatible(a, &q, 1).unwrap() {
                continue;
            }
            spectrum_cache.get_or_insert_with(|| spec_congruences(a).unwrap());
            let report = check_linear_correspondence(a, &q, 1).unwrap();
            assert!(
                !report.lhs || report.rhs,
                "criterion 9: fail — {name} valid but spectrum refutes it on |A|={}",
                a.size()
            );
            checked += 1;
        }
    }
    // The upset algebra of the V poset refutes the linearity axiom and its
    // spectrum refutes the root-system condition.
    let up_v = ha_as_fle(&up_algebra(&v_poset(), Language::full())).unwrap();
    let report = check_linear_correspondence(&up_v, &goedel_dummett_quasiequation(), 1).unwrap();
    assert!(!report.lhs, "criterion 9: fail — V fixture validates linearity");
    assert!(
        !check_fo(&spec_congruences(&up_v).unwrap(), &root_system()).unwrap(),
        "criterion 9: fail — V fixture spectrum is a root system"
    );
    finish(
        9,
        "linear suite",
        start,
        None,
        format!("{} algebras enumerated, {checked} compatible checks", algebras.len()),
    );
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let exe = env!("CARGO_BIN_EXE_sahlq");
    for args in [
        vec!["oracle", "em", "--size", "4"],
        vec!["correspond", "gd"],
    ] {
        let run = || {
            Command::new(exe)
                .args(&args)
                .env("SAHLQ_SEED", "7")
                .output()
                .expect("binary runs")
        };
        let (first, second) = (run(), run());
        assert_eq!(
            first.status.code(),
            second.status.code(),
            "criterion 10: fail — exit codes differ for {args:?}"
        );
        assert_eq!(
            first.stdout, second.stdout,
            "criterion 10: fail — stdout differs for {args:?}"
        );
        assert!(
            !first.stdout.is_empty(),
            "criterion 10: fail — empty report for {args:?}"
        );
    }
    finish(
        10,
        "determinism",
        start,
        None,
        "oracle and correspond reports byte-identical across runs".into(),
    );
}
