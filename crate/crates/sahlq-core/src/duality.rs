//! Finite duality: filters, the meet-irreducible filter poset `A₋`, partial
//! p-morphism classification, and the `f₋` / `Up_K(p)` constructions.
//!
//! Filters are bitsets over an algebra's carrier. The dual poset `A₋` carries
//! the inclusion order on meet-irreducible filters; homomorphisms
//! `f : A → B` induce partial maps `f₋ : B₋ ⇀ A₋`, and arrows between posets
//! induce homomorphisms between their upset algebras.

use crate::algebra::{
    up_algebra, up_algebra_carrier, AlgebraError, ClassTag, FiniteAlgebra, FinitePoset, Language,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("partial map lacks the arrow kind required by the language")]
    WrongArrowKind,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

// ---------------------------------------------------------------------------
// Filters
// ---------------------------------------------------------------------------

/// All filters of `a` (nonempty upsets closed under binary meet), as bitsets
/// in ascending order.
pub fn filters(a: &FiniteAlgebra) -> Vec<u64> {
    let n = a.size();
    assert!(n <= 20, "filter enumeration is desk-scale only (n <= 20)");
    let full: u64 = (1 << n) - 1;
    let mut out = Vec::new();
    'subset: for set in 1..=full {
        if !a.poset().is_upset(set) {
            continue;
        }
        for i in 0..n {
            if set >> i & 1 == 0 {
                continue;
            }
            for j in i..n {
                if set >> j & 1 == 1 && set >> a.meet_of(i, j) & 1 == 0 {
                    continue 'subset;
                }
            }
        }
        out.push(set);
    }
    out
}

/// The poset `A₋` of meet-irreducible filters of `a`, ordered by inclusion,
/// together with the filters themselves (index-aligned with the poset).
///
/// A filter is meet irreducible when it is proper and is not the
/// intersection of two strictly larger filters.
pub fn meet_irreducible_filters(a: &FiniteAlgebra) -> (FinitePoset, Vec<u64>) {
    let all = filters(a);
    let full: u64 = (1 << a.size()) - 1;
    let irr: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&f| {
            f != full
                && !all.iter().any(|&g| {
                    g != f
                        && f & !g == 0
                        && all
                            .iter()
                            .any(|&h| h != f && f & !h == 0 && g & h == f)
                })
        })
        .collect();
    let poset = FinitePoset::new(irr.len(), |i, j| irr[i] & !irr[j] == 0)
        .expect("inclusion orders a poset");
    (poset, irr)
}

/// All implicative filters of `a` (subsets containing `1` and closed under
/// modus ponens), as bitsets in ascending order. Requires a `→` table; no
/// meet is used.
pub fn implicative_filters(a: &FiniteAlgebra) -> Result<Vec<u64>, DualityError> {
    let n = a.size();
    assert!(n <= 20, "filter enumeration is desk-scale only (n <= 20)");
    let one = a.one().ok_or(AlgebraError::MissingOperation("1"))?;
    if a.imp_of(0, 0).is_none() {
        return Err(AlgebraError::MissingOperation("->").into());
    }
    let full: u64 = (1 << n) - 1;
    let mut out = Vec::new();
    'subset: for set in 1..=full {
        if set >> one & 1 == 0 {
            continue;
        }
        for x in 0..n {
            if set >> x & 1 == 0 {
                continue;
            }
            for y in 0..n {
                let xy = a.imp_of(x, y).unwrap();
                if set >> xy & 1 == 1 && set >> y & 1 == 0 {
                    continue 'subset;
                }
            }
        }
        out.push(set);
    }
    Ok(out)
}

/// The poset of meet-irreducible implicative filters (irreducibility taken in
/// the lattice of implicative filters).
pub fn meet_irreducible_implicative_filters(
    a: &FiniteAlgebra,
) -> Result<(FinitePoset, Vec<u64>), DualityError> {
    let all = implicative_filters(a)?;
    let full: u64 = (1 << a.size()) - 1;
    let irr: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&f| {
            f != full
                && !all.iter().any(|&g| {
                    g != f
                        && f & !g == 0
                        && all
                            .iter()
                            .any(|&h| h != f && f & !h == 0 && g & h == f)
                })
        })
        .collect();
    let poset = FinitePoset::new(irr.len(), |i, j| irr[i] & !irr[j] == 0)
        .expect("inclusion orders a poset");
    Ok((poset, irr))
}

/// True iff `f` is prime in `a`: the complement is nonempty and closed under
/// the (total) join. Used to cross-check meet irreducibility on distributive
/// lattices.
pub fn is_prime_filter(a: &FiniteAlgebra, f: u64) -> Option<bool> {
    let n = a.size();
    let full: u64 = (1 << n) - 1;
    let co = full & !f;
    if co == 0 {
        return Some(false);
    }
    for i in 0..n {
        if co >> i & 1 == 0 {
            continue;
        }
        for j in i..n {
            if co >> j & 1 == 1 {
                let ij = a.join_of(i, j)?;
                if co >> ij & 1 == 0 {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

// ---------------------------------------------------------------------------
// Partial maps
// ---------------------------------------------------------------------------

/// A partial function between posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    pub source: FinitePoset,
    pub target: FinitePoset,
    /// Bitset of source elements in the domain.
    pub dom: u64,
    /// `values[x]` is meaningful exactly when `x` is in the domain.
    pub values: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn new(
        source: FinitePoset,
        target: FinitePoset,
        pairs: &[(usize, usize)],
    ) -> PartialMap {
        let mut dom = 0u64;
        let mut values = vec![None; source.size()];
        for &(x, y) in pairs {
            assert!(x < source.size() && y < target.size());
            dom |= 1 << x;
            values[x] = Some(y);
        }
        PartialMap {
            source,
            target,
            dom,
            values,
        }
    }

    pub fn identity(p: &FinitePoset) -> PartialMap {
        let pairs: Vec<(usize, usize)> = (0..p.size()).map(|i| (i, i)).collect();
        PartialMap::new(p.clone(), p.clone(), &pairs)
    }

    pub fn in_dom(&self, x: usize) -> bool {
        self.dom >> x & 1 == 1
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        if self.in_dom(x) {
            self.values[x]
        } else {
            None
        }
    }

    pub fn is_total(&self) -> bool {
        let n = self.source.size();
        let full: u64 = if n == 0 { 0 } else { (1 << n) - 1 };
        self.dom == full
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target.size()).all(|y| (0..self.source.size()).any(|x| self.apply(x) == Some(y)))
    }

    /// Preimage of a target bitset, as a source bitset.
    pub fn preimage(&self, set: u64) -> u64 {
        let mut out = 0u64;
        for x in 0..self.source.size() {
            if let Some(y) = self.apply(x) {
                if set >> y & 1 == 1 {
                    out |= 1 << x;
                }
            }
        }
        out
    }
}

/// Tags assigned by [`check_partial_map_kind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapTag {
    OrderPreserving,
    PartialNegativePMorphism,
    PartialPositivePMorphism,
    PartialPMorphism,
    AlmostTotal,
    Total,
    NegativePMorphism,
    PMorphism,
}

/// Decide every tag by exhaustively checking its clause.
///
/// The p-morphism tags require order preservation; `AlmostTotal` and `Total`
/// are purely structural (domain a downset / the whole source).
pub fn check_partial_map_kind(p: &PartialMap) -> BTreeSet<MapTag> {
    let mut tags = BTreeSet::new();
    let sx = &p.source;
    let sy = &p.target;
    let nx = sx.size();
    let ny = sy.size();

    if sx.down_closure(p.dom) == p.dom {
        tags.insert(MapTag::AlmostTotal);
    }
    if p.is_total() {
        tags.insert(MapTag::Total);
    }

    let mut order_preserving = true;
    for x in 0..nx {
        for z in 0..nx {
            if p.in_dom(x) && p.in_dom(z) && sx.leq(x, z) {
                if !sy.leq(p.values[x].unwrap(), p.values[z].unwrap()) {
                    order_preserving = false;
                }
            }
        }
    }
    if !order_preserving {
        return tags;
    }
    tags.insert(MapTag::OrderPreserving);

    // Coverage: X = ↓{x : ↑x ⊆ dom(p)}.
    let mut core = 0u64;
    for x in 0..nx {
        if sx.upset_of(x) & !p.dom == 0 {
            core |= 1 << x;
        }
    }
    let covered = {
        let full: u64 = if nx == 0 { 0 } else { (1 << nx) - 1 };
        sx.down_closure(core) == full
    };

    let mut negative_back = true;
    let mut positive_back = true;
    for x in 0..nx {
        if !p.in_dom(x) {
            continue;
        }
        let px = p.values[x].unwrap();
        for y in 0..ny {
            if !sy.leq(px, y) {
                continue;
            }
            let mut neg_ok = false;
            let mut pos_ok = false;
            for z in 0..nx {
                if p.in_dom(z) && sx.leq(x, z) {
                    let pz = p.values[z].unwrap();
                    if sy.leq(y, pz) {
                        neg_ok = true;
                    }
                    if pz == y {
                        pos_ok = true;
                    }
                }
            }
            negative_back &= neg_ok;
            positive_back &= pos_ok;
        }
    }

    if covered && negative_back {
        tags.insert(MapTag::PartialNegativePMorphism);
    }
    if positive_back {
        tags.insert(MapTag::PartialPositivePMorphism);
    }
    if tags.contains(&MapTag::PartialNegativePMorphism)
        && tags.contains(&MapTag::PartialPositivePMorphism)
    {
        tags.insert(MapTag::PartialPMorphism);
    }
    if tags.contains(&MapTag::Total) {
        if tags.contains(&MapTag::PartialNegativePMorphism) {
            tags.insert(MapTag::NegativePMorphism);
        }
        if tags.contains(&MapTag::PartialPMorphism) {
            tags.insert(MapTag::PMorphism);
        }
    }
    tags
}

/// The arrow tags a dual map must carry for a given algebra class.
pub fn required_tags_for_class(class: ClassTag) -> Vec<MapTag> {
    match class {
        ClassTag::Psl => vec![MapTag::PartialNegativePMorphism],
        ClassTag::Isl => vec![MapTag::PartialPositivePMorphism],
        ClassTag::BIsl => vec![MapTag::PartialPMorphism],
        ClassTag::Pdl => vec![MapTag::NegativePMorphism, MapTag::Total],
        ClassTag::Il => vec![MapTag::PartialPositivePMorphism, MapTag::AlmostTotal],
        ClassTag::Ha => vec![MapTag::PMorphism, MapTag::Total],
        _ => vec![MapTag::OrderPreserving],
    }
}

/// The operations a homomorphism must preserve for each language.
fn language_of_class(class: ClassTag) -> Language {
    match class {
        ClassTag::Psl => Language::psl(),
        ClassTag::Isl => Language::isl(),
        ClassTag::BIsl => Language {
            and: true,
            or: false,
            imp: true,
            not: true,
            zero: true,
            one: true,
        },
        ClassTag::Pdl => Language {
            and: true,
            or: true,
            imp: false,
            not: true,
            zero: true,
            one: true,
        },
        ClassTag::Il => Language {
            and: true,
            or: true,
            imp: true,
            not: false,
            zero: false,
            one: true,
        },
        _ => Language::full(),
    }
}

/// Check that `f` (a total map given as `f[a] = b`) preserves the operations
/// of `lang`. Returns the first violated instance on failure.
pub fn check_homomorphism(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    f: &[usize],
    lang: Language,
) -> Result<(), DualityError> {
    if f.len() != a.size() || f.iter().any(|&v| v >= b.size()) {
        return Err(DualityError::NotHomomorphism(
            "map has the wrong shape".into(),
        ));
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if lang.and && f[a.meet_of(x, y)] != b.meet_of(f[x], f[y]) {
                return Err(DualityError::NotHomomorphism(format!(
                    "meet not preserved at ({x},{y})"
                )));
            }
            if lang.or && a.join_of(x, y).map(|j| f[j]) != b.join_of(f[x], f[y]) {
                return Err(DualityError::NotHomomorphism(format!(
                    "join not preserved at ({x},{y})"
                )));
            }
            if lang.imp && a.imp_of(x, y).map(|i| f[i]) != b.imp_of(f[x], f[y]) {
                return Err(DualityError::NotHomomorphism(format!(
                    "implication not preserved at ({x},{y})"
                )));
            }
        }
        if lang.not && a.neg_of(x).map(|nx| f[nx]) != b.neg_of(f[x]) {
            return Err(DualityError::NotHomomorphism(format!(
                "negation not preserved at {x}"
            )));
        }
    }
    if lang.zero && a.zero().map(|z| f[z]) != b.zero() {
        return Err(DualityError::NotHomomorphism("0 not preserved".into()));
    }
    if lang.one && a.one().map(|o| f[o]) != b.one() {
        return Err(DualityError::NotHomomorphism("1 not preserved".into()));
    }
    Ok(())
}

/// The dual partial map `f₋ : B₋ ⇀ A₋` of a homomorphism `f : A → B`:
/// `dom(f₋) = {F ∈ B₋ : f⁻¹[F] ∈ A₋}` and `f₋(F) = f⁻¹[F]`.
pub fn lower_star(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    f: &[usize],
    lang: Language,
) -> Result<PartialMap, DualityError> {
    check_homomorphism(a, b, f, lang)?;
    let (a_star, a_filters) = meet_irreducible_filters(a);
    let (b_star, b_filters) = meet_irreducible_filters(b);
    let mut pairs = Vec::new();
    for (fi, &filter_b) in b_filters.iter().enumerate() {
        let mut pre = 0u64;
        for x in 0..a.size() {
            if filter_b >> f[x] & 1 == 1 {
                pre |= 1 << x;
            }
        }
        if let Some(ai) = a_filters.iter().position(|&g| g == pre) {
            pairs.push((fi, ai));
        }
    }
    Ok(PartialMap::new(b_star, a_star, &pairs))
}

/// The homomorphism `Up_K(p) : Up_K(Y) → Up_K(X)` of an arrow
/// `p : X ⇀ Y`, computed as `U ↦ X ∖ ↓ p⁻¹[Y ∖ U]`.
///
/// Returns the upset algebras of the two posets and the map (indices into
/// the ascending-bitset upset carriers). Fails with `WrongArrowKind` when
/// `p` does not carry the arrow tags required for the class, and re-checks
/// that the result is a homomorphism in that class's language.
pub fn up_of_map(
    p: &PartialMap,
    class: ClassTag,
) -> Result<(FiniteAlgebra, FiniteAlgebra, Vec<usize>), DualityError> {
    let tags = check_partial_map_kind(p);
    if !required_tags_for_class(class)
        .iter()
        .all(|t| tags.contains(t))
    {
        return Err(DualityError::WrongArrowKind);
    }
    let lang = language_of_class(class);
    let up_y = up_algebra(&p.target, lang);
    let up_x = up_algebra(&p.source, lang);
    let ys = up_algebra_carrier(&p.target);
    let xs = up_algebra_carrier(&p.source);
    let nx = p.source.size();
    let full_x: u64 = if nx == 0 { 0 } else { (1 << nx) - 1 };
    let full_y: u64 = {
        let ny = p.target.size();
        if ny == 0 {
            0
        } else {
            (1 << ny) - 1
        }
    };
    let mut map = Vec::with_capacity(ys.len());
    for &u in &ys {
        let image = full_x & !p.source.down_closure(p.preimage(full_y & !u));
        let idx = xs
            .iter()
            .position(|&v| v == image)
            .expect("image of an upset under Up(p) is an upset");
        map.push(idx);
    }
    check_homomorphism(&up_y, &up_x, &map, lang)?;
    Ok((up_y, up_x, map))
}

// ---------------------------------------------------------------------------
// Homomorphism enumeration
// ---------------------------------------------------------------------------

/// All homomorphisms `A → B` for the language, by backtracking. When the
/// raw search space `|B|^|A|` exceeds 10⁶, a seeded randomized backtracking
/// pass collects at most `cap` homomorphisms instead.
pub fn homomorphisms(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    lang: Language,
    cap: usize,
    seed: u64,
) -> Vec<Vec<usize>> {
    let space = (b.size() as f64).powi(a.size() as i32);
    let exhaustive = space <= 1e6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut partial: Vec<Option<usize>> = vec![None; a.size()];
    let order: Vec<usize> = (0..a.size()).collect();
    search(
        a,
        b,
        lang,
        &order,
        0,
        &mut partial,
        &mut out,
        if exhaustive { usize::MAX } else { cap },
        if exhaustive { None } else { Some(&mut rng) },
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    lang: Language,
    order: &[usize],
    pos: usize,
    partial: &mut Vec<Option<usize>>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) {
    if out.len() >= cap {
        return;
    }
    if pos == order.len() {
        let f: Vec<usize> = partial.iter().map(|v| v.unwrap()).collect();
        if check_homomorphism(a, b, &f, lang).is_ok() {
            out.push(f);
        }
        return;
    }
    let x = order[pos];
    let mut candidates: Vec<usize> = (0..b.size()).collect();
    if let Some(r) = rng.as_deref_mut() {
        candidates.shuffle(r);
    }
    'cand: for v in candidates {
        // Prune: preservation among already-assigned elements.
        for y in 0..a.size() {
            if let Some(fy) = partial[y] {
                if partial[a.meet_of(x, y)].map_or(false, |m| m != b.meet_of(v, fy))
                    || partial[a.meet_of(y, x)].map_or(false, |m| m != b.meet_of(fy, v))
                {
                    continue 'cand;
                }
            }
        }
        if lang.zero && a.zero() == Some(x) && b.zero() != Some(v) {
            continue;
        }
        if lang.one && a.one() == Some(x) && b.one() != Some(v) {
            continue;
        }
        partial[x] = Some(v);
        search(a, b, lang, order, pos + 1, partial, out, cap, rng.as_deref_mut());
        partial[x] = None;
        if out.len() >= cap {
            return;
        }
    }
}

/// The embedding `a ↦ {F ∈ A₋ : a ∈ F}` of `A` into `Up(A₋)`, returned as
/// indices into the ascending upset carrier of `A₋`. `None` when some image
/// is not an upset or collides (which would falsify the embedding claim).
pub fn embed_into_up_of_dual(a: &FiniteAlgebra) -> Option<(FiniteAlgebra, Vec<usize>)> {
    let (a_star, star_filters) = meet_irreducible_filters(a);
    let up = up_algebra(&a_star, Language::full());
    let carrier = up_algebra_carrier(&a_star);
    let mut map = Vec::with_capacity(a.size());
    for e in 0..a.size() {
        let mut set = 0u64;
        for (i, &f) in star_filters.iter().enumerate() {
            if f >> e & 1 == 1 {
                set |= 1 << i;
            }
        }
        map.push(carrier.iter().position(|&u| u == set)?);
    }
    // Injectivity and order reflection make this an embedding of the
    // meet-semilattice reduct; stronger preservation is checked in tests.
    for i in 0..a.size() {
        for j in 0..a.size() {
            if a.leq(i, j) != up.leq(map[i], map[j]) {
                return None;
            }
        }
    }
    Some((up, map))
}
