//! Cross-module integration checks: the corpus quasiequations flow through
//! translation, correspondence, duality, and the metalogic layer with
//! mutually consistent verdicts on small structures.

use sahlq_core::algebra::{up_algebra, FiniteAlgebra, Language};
use sahlq_core::correspondence::{correspondent, gmt_quasiequation};
use sahlq_core::duality::meet_irreducible_filters;
use sahlq_core::fomodel::{check_fo, enumerate_algebras, ClassFilter, EnumerationConfig};
use sahlq_core::metalogic::{characteristic_theorems_dt, ipc_profile, spec_ipc};
use sahlq_core::substructural::{check_linear_correspondence, ha_as_fle, ill_compatible};
use sahlq_core::syntax::{
    btw_quasiequation, excluded_middle_quasiequation, goedel_dummett_quasiequation,
    weml_quasiequation, Quasiequation,
};

fn corpus() -> Vec<Quasiequation> {
    vec![
        excluded_middle_quasiequation(),
        goedel_dummett_quasiequation(),
        weml_quasiequation(),
        btw_quasiequation(1),
        btw_quasiequation(2),
    ]
}

#[test]
fn corpus_is_sahlqvist_and_translates() {
    for q in corpus() {
        assert!(q.is_sahlqvist(false), "{}", q.display());
        let g = gmt_quasiequation(&q).unwrap();
        assert!(g.is_sahlqvist(true), "{}", g.display());
        correspondent(&q).unwrap();
    }
}

/// On every Heyting algebra with at most four elements, four readings of a
/// corpus quasiequation agree: direct validity, validity of the DT
/// characteristic theorems, the spectrum satisfying the correspondent, and
/// the linear-logic report on the same algebra viewed as FL_e.
#[test]
fn four_readings_agree_on_small_heyting_algebras() {
    let ipc = ipc_profile();
    let algebras: Vec<FiniteAlgebra> =
        enumerate_algebras(&EnumerationConfig::algebras(4, ClassFilter::Ha));
    assert!(!algebras.is_empty());
    for q in corpus() {
        let tr = correspondent(&q).unwrap();
        let theorems = characteristic_theorems_dt(&q, &ipc, 1).unwrap();
        for a in &algebras {
            let direct = a.validates_quasiequation(&q).unwrap();
            let by_theorems = theorems
                .iter()
                .all(|f| a.validates_formula(f).unwrap());
            let by_spectrum = check_fo(&spec_ipc(a).unwrap(), &tr).unwrap();
            assert_eq!(direct, by_theorems, "{} on |A|={}", q.display(), a.size());
            assert_eq!(direct, by_spectrum, "{} on |A|={}", q.display(), a.size());
            let fle = ha_as_fle(a).unwrap();
            assert!(ill_compatible(&fle, &q, 1).unwrap());
            let linear = check_linear_correspondence(&fle, &q, 1).unwrap();
            assert_eq!(linear.rhs, by_spectrum);
            assert_eq!(linear.lhs, direct, "{} on |A|={}", q.display(), a.size());
        }
    }
}

/// Taking the dual and going back up is inflationary for validity: a PSL
/// validating a corpus quasiequation in its language keeps validating it in
/// the upset algebra of its dual.
#[test]
fn dual_round_trip_preserves_validity_on_small_psls() {
    let algebras = enumerate_algebras(&EnumerationConfig::algebras(5, ClassFilter::Psl));
    let psl_corpus = [
        excluded_middle_quasiequation(),
        weml_quasiequation(),
        btw_quasiequation(1),
    ];
    for a in &algebras {
        let (dual, _) = meet_irreducible_filters(a);
        let up = up_algebra(&dual, Language::full());
        for q in &psl_corpus {
            if a.validates_quasiequation(q).unwrap() {
                assert!(
                    up.validates_quasiequation(q).unwrap(),
                    "{} lost on |A|={}",
                    q.display(),
                    a.size()
                );
            }
        }
    }
}
