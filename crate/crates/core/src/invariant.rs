//! The invariant ring of a diagonal cyclic action as a monoid algebra.
//!
//! For a weight system `(r; l_0, ..., l_n)` the invariant monomials are the
//! exponent vectors `e` with `sum l_i e_i = 0 mod r`. They form an affine
//! monoid whose minimal generators (the Hilbert basis) generate `A^G`, and
//! whose binomial relations present the quotient model `Y/G` over `O_K`.
//!
//! Minimal generators are minimal zero-sum sequences over `Z/r`, so their
//! total degree is at most `r` (the Davenport constant of `Z/r`); the
//! enumeration below walks vectors by increasing degree up to that bound.
//! Relations are computed degree by degree: the fibers of the monoid map
//! are enumerated up to a degree bound and every fiber not yet connected by
//! earlier relations contributes the edges of a spanning tree. The result is
//! a minimal generating set of the toric ideal in degrees up to the bound.
//! Past the requested bound, enumeration continues until the relations span
//! the integer kernel of the generator matrix.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::action::WeightSystem;
use crate::algebra::series::{coordinate_names, format_monomial};
use crate::algebra::Monomial;
use crate::error::{Error, Result};

pub const DEFAULT_RELATION_DEGREE: u32 = 12;

pub fn is_invariant_monomial(w: &WeightSystem, e: &[u32]) -> Result<bool> {
    Ok(w.weighted_degree(e)? == 0)
}

/// Calls `visit` on every exponent vector of length `len` and total degree `deg`.
pub(crate) fn for_each_of_degree(len: usize, deg: u32, visit: &mut impl FnMut(&[u32])) {
    fn rec(buf: &mut Vec<u32>, i: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
        if i + 1 == buf.len() {
            buf[i] = left;
            visit(buf);
            return;
        }
        for k in (0..=left).rev() {
            buf[i] = k;
            rec(buf, i + 1, left - k, visit);
        }
        buf[i] = 0;
    }
    if len == 0 {
        if deg == 0 {
            visit(&[]);
        }
        return;
    }
    let mut buf = vec![0; len];
    rec(&mut buf, 0, deg, visit);
}

/// Minimal nonzero vectors `e` (componentwise order) with `sum weights_i e_i = 0 mod r`,
/// sorted in monomial order.
pub(crate) fn minimal_zero_sum_vectors(weights: &[u64], r: u64) -> Vec<Monomial> {
    let mut found: Vec<Monomial> = Vec::new();
    for deg in 1..=r as u32 {
        let mut layer = Vec::new();
        for_each_of_degree(weights.len(), deg, &mut |e| {
            let wd = weights
                .iter()
                .zip(e)
                .fold(0, |acc, (&l, &k)| (acc + l * k as u64) % r);
            if wd != 0 {
                return;
            }
            let m = Monomial(e.to_vec());
            if !found.iter().any(|h| h.divides(&m)) {
                layer.push(m);
            }
        });
        found.extend(layer);
    }
    found.sort();
    found
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis {
    pub weight_system: WeightSystem,
    pub generators: Vec<Monomial>,
}

impl HilbertBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Image in `N^{n+1}` of a product of generators.
    pub fn image(&self, u: &[u32]) -> Monomial {
        let mut out = vec![0; self.weight_system.len()];
        for (g, &k) in self.generators.iter().zip(u) {
            for (o, &e) in out.iter_mut().zip(&g.0) {
                *o += k * e;
            }
        }
        Monomial(out)
    }

    fn image_degree(&self, u: &[u32]) -> u32 {
        self.generators.iter().zip(u).map(|(g, &k)| k * g.degree()).sum()
    }
}

pub fn hilbert_basis(w: &WeightSystem) -> HilbertBasis {
    HilbertBasis {
        weight_system: w.clone(),
        generators: minimal_zero_sum_vectors(w.weights(), w.r()),
    }
}

/// A binomial `prod g^lhs = prod g^rhs` among Hilbert basis generators,
/// exponents indexed like the basis; `lhs` precedes `rhs` in monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Vec<u32>,
    pub rhs: Vec<u32>,
}

impl Relation {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Self {
        if Monomial(a.clone()) <= Monomial(b.clone()) {
            Relation { lhs: a, rhs: b }
        } else {
            Relation { lhs: b, rhs: a }
        }
    }
}

/// Integer kernel basis of an integer matrix (rows of equal length), by
/// unimodular column reduction of `[A; I]`, followed by a greedy pairwise
/// size reduction.
pub fn integer_kernel(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let nrows = rows.len();
    // columns of the augmented matrix, each of length nrows + ncols
    let mut cols: Vec<Vec<i128>> = (0..ncols)
        .map(|c| {
            let mut v: Vec<i128> = rows.iter().map(|r| r[c] as i128).collect();
            v.extend((0..ncols).map(|k| i128::from(k == c)));
            v
        })
        .collect();
    let mut pivot = 0;
    for row in 0..nrows {
        loop {
            let nonzero: Vec<usize> = (pivot..ncols).filter(|&c| cols[c][row] != 0).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    cols.swap(pivot, c);
                    pivot += 1;
                }
                break;
            }
            let &best = nonzero.iter().min_by_key(|&&c| cols[c][row].abs()).unwrap();
            for &c in &nonzero {
                if c == best {
                    continue;
                }
                let q = cols[c][row] / cols[best][row];
                let (src, dst) = (cols[best].clone(), &mut cols[c]);
                for (d, s) in dst.iter_mut().zip(&src) {
                    *d -= q * s;
                }
            }
        }
    }
    let mut kernel: Vec<Vec<i64>> = cols[pivot..]
        .iter()
        .map(|c| c[nrows..].iter().map(|&x| x as i64).collect())
        .collect();
    let norm = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    let mut improved = true;
    while improved {
        improved = false;
        for i in 0..kernel.len() {
            for j in 0..kernel.len() {
                if i == j {
                    continue;
                }
                for sign in [1, -1] {
                    let cand: Vec<i64> = kernel[i]
                        .iter()
                        .zip(&kernel[j])
                        .map(|(a, b)| a - sign * b)
                        .collect();
                    if norm(&cand) < norm(&kernel[i]) {
                        kernel[i] = cand;
                        improved = true;
                    }
                }
            }
        }
    }
    kernel
}

/// All generator-space exponent vectors whose image has total degree exactly
/// `degree`, grouped by image, each group sorted.
fn fibers_of_degree(b: &HilbertBasis, degree: u32) -> BTreeMap<Monomial, Vec<Vec<u32>>> {
    fn rec(
        b: &HilbertBasis,
        i: usize,
        budget: u32,
        cur: &mut Vec<u32>,
        out: &mut BTreeMap<Monomial, Vec<Vec<u32>>>,
    ) {
        if budget == 0 {
            out.entry(b.image(cur)).or_default().push(cur.clone());
            return;
        }
        if i == b.len() {
            return;
        }
        let d = b.generators[i].degree();
        let mut k = 0;
        loop {
            cur[i] = k;
            rec(b, i + 1, budget - k * d, cur, out);
            if (k + 1) * d > budget {
                break;
            }
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = BTreeMap::new();
    let mut cur = vec![0; b.len()];
    rec(b, 0, degree, &mut cur, &mut out);
    for v in out.values_mut() {
        v.sort_by_key(|x| Monomial(x.clone()));
    }
    out
}

/// Integer row echelon form, grown one vector at a time; decides membership
/// in the lattice spanned so far.
struct LatticeEchelon {
    rows: Vec<Vec<i128>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn leading(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

impl LatticeEchelon {
    fn new() -> Self {
        LatticeEchelon { rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Vec<i128>) {
        let mut k = 0;
        while k < self.rows.len() {
            let Some(lead) = leading(&v) else { return };
            let c = leading(&self.rows[k]).expect("rows are nonzero");
            if c > lead {
                self.rows.insert(k, v);
                return;
            }
            if c == lead {
                let (a, b) = (self.rows[k][c], v[c]);
                if b % a == 0 {
                    let q = b / a;
                    for (x, y) in v.iter_mut().zip(&self.rows[k]) {
                        *x -= q * y;
                    }
                } else {
                    let (g, x, y) = ext_gcd(a, b);
                    let row = &self.rows[k];
                    let combined: Vec<i128> = row.iter().zip(&v).map(|(r, w)| x * r + y * w).collect();
                    let rest: Vec<i128> = row.iter().zip(&v).map(|(r, w)| (a / g) * w - (b / g) * r).collect();
                    self.rows[k] = combined;
                    v = rest;
                }
            }
            k += 1;
        }
        if leading(&v).is_some() {
            self.rows.push(v);
        }
    }

    fn contains(&self, v: &[i128]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = leading(row).expect("rows are nonzero");
            if v[c] % row[c] != 0 {
                return false;
            }
            let q = v[c] / row[c];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
        leading(&v).is_none()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Relations grouped by the image of their two sides.
struct RelationIndex<'a> {
    by_image: BTreeMap<Monomial, Vec<&'a Relation>>,
}

impl<'a> RelationIndex<'a> {
    fn new(b: &HilbertBasis, relations: &'a [Relation]) -> Self {
        let mut idx = RelationIndex { by_image: BTreeMap::new() };
        for rel in relations {
            idx.add(b, rel);
        }
        idx
    }

    fn add(&mut self, b: &HilbertBasis, rel: &'a Relation) {
        self.by_image.entry(b.image(&rel.lhs)).or_default().push(rel);
    }

    /// Relations that can act inside the fiber over `image`.
    fn acting_on(&self, image: &Monomial) -> Vec<&'a Relation> {
        self.by_image
            .iter()
            .filter(|(m, _)| m.divides(image))
            .flat_map(|(_, rels)| rels.iter().copied())
            .collect()
    }
}

/// Component label per fiber element under single relation moves.
fn fiber_components(fiber: &[Vec<u32>], relations: &[&Relation]) -> Vec<usize> {
    let index: HashMap<&[u32], usize> = fiber.iter().enumerate().map(|(i, u)| (u.as_slice(), i)).collect();
    let mut uf = UnionFind::new(fiber.len());
    for (i, u) in fiber.iter().enumerate() {
        for rel in relations {
            for (from, to) in [(&rel.lhs, &rel.rhs), (&rel.rhs, &rel.lhs)] {
                if from.iter().zip(u).all(|(a, b)| a <= b) {
                    let v: Vec<u32> = u.iter().zip(from).zip(to).map(|((x, f), t)| x - f + t).collect();
                    if let Some(&j) = index.get(v.as_slice()) {
                        uf.union(i, j);
                    }
                }
            }
        }
    }
    (0..fiber.len()).map(|i| uf.find(i)).collect()
}

/// Largest image degree among the binomials of the integer kernel of the
/// generator matrix; 0 when the kernel is trivial.
pub fn kernel_degree(b: &HilbertBasis) -> u32 {
    kernel_binomials(b)
        .iter()
        .map(|v| {
            let pos: Vec<u32> = v.iter().map(|&x| x.max(0) as u32).collect();
            b.image_degree(&pos)
        })
        .max()
        .unwrap_or(0)
}

fn kernel_binomials(b: &HilbertBasis) -> Vec<Vec<i64>> {
    let rows: Vec<Vec<i64>> = (0..b.weight_system.len())
        .map(|i| b.generators.iter().map(|g| g.0[i] as i64).collect())
        .collect();
    integer_kernel(&rows)
}

/// Binomial relations connecting every fiber of image degree `<= bound`,
/// where `bound >= degree_bound` is the first degree at which the relations
/// also span the kernel lattice of the generator matrix. Returns the
/// relations and `bound`.
pub fn toric_relations_with_bound(b: &HilbertBasis, degree_bound: u32) -> (Vec<Relation>, u32) {
    let kernel: Vec<Vec<i128>> = kernel_binomials(b)
        .into_iter()
        .map(|v| v.into_iter().map(i128::from).collect())
        .collect();
    let ceiling = degree_bound.max(kernel_degree(b));
    let mut lattice = LatticeEchelon::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut by_image: BTreeMap<Monomial, Vec<Relation>> = BTreeMap::new();
    let mut degree = 0;
    loop {
        degree += 1;
        if degree > ceiling {
            return (relations, ceiling);
        }
        for (image, fiber) in fibers_of_degree(b, degree) {
            if fiber.len() < 2 {
                continue;
            }
            let acting: Vec<&Relation> = by_image
                .iter()
                .filter(|(m, _)| m.divides(&image))
                .flat_map(|(_, rels)| rels.iter())
                .collect();
            let labels = fiber_components(&fiber, &acting);
            // fiber is sorted, so the first member seen of each component is its minimum
            let mut reps: Vec<usize> = Vec::new();
            for (i, &l) in labels.iter().enumerate() {
                if !reps.iter().any(|&j| labels[j] == l) {
                    reps.push(i);
                }
            }
            for &j in &reps[1..] {
                let rel = Relation::new(fiber[reps[0]].clone(), fiber[j].clone());
                lattice.insert(rel.lhs.iter().zip(&rel.rhs).map(|(&x, &y)| x as i128 - y as i128).collect());
                by_image.entry(image.clone()).or_default().push(rel.clone());
                relations.push(rel);
            }
        }
        if degree >= degree_bound && kernel.iter().all(|v| lattice.contains(v)) {
            return (relations, degree);
        }
    }
}

/// Binomial relations complete up to image degree `degree_bound` (or further,
/// until they span the kernel lattice).
pub fn toric_relations_to_degree(b: &HilbertBasis, degree_bound: u32) -> Vec<Relation> {
    toric_relations_with_bound(b, degree_bound).0
}

pub fn toric_relations(b: &HilbertBasis) -> Vec<Relation> {
    toric_relations_to_degree(b, DEFAULT_RELATION_DEGREE)
}

/// Every invariant monomial of degree `<= degree_bound` is a product of basis
/// elements. Returns the first counterexample on failure.
pub fn generation_certificate(b: &HilbertBasis, degree_bound: u32) -> std::result::Result<(), Monomial> {
    let w = &b.weight_system;
    let mut reachable: HashMap<Vec<u32>, bool> = HashMap::new();
    reachable.insert(vec![0; w.len()], true);
    for d in 1..=degree_bound {
        let mut failure = None;
        for_each_of_degree(w.len(), d, &mut |e| {
            if failure.is_some() || w.weighted_degree(e).unwrap() != 0 {
                return;
            }
            let ok = b.generators.iter().any(|g| {
                g.0.iter().zip(e).all(|(a, b)| a <= b) && {
                    let rest: Vec<u32> = e.iter().zip(&g.0).map(|(x, y)| x - y).collect();
                    reachable.get(&rest).copied().unwrap_or(false)
                }
            });
            if ok {
                reachable.insert(e.to_vec(), true);
            } else {
                failure = Some(Monomial(e.to_vec()));
            }
        });
        if let Some(m) = failure {
            return Err(m);
        }
    }
    Ok(())
}

/// Any two generator products of image degree `<= degree_bound` with the same
/// image are linked by a chain of single relation moves. Returns a
/// disconnected fiber's image on failure.
pub fn connectivity_certificate(
    b: &HilbertBasis,
    relations: &[Relation],
    degree_bound: u32,
) -> std::result::Result<(), Monomial> {
    let index = RelationIndex::new(b, relations);
    for degree in 1..=degree_bound {
        for (image, fiber) in fibers_of_degree(b, degree) {
            if fiber.len() < 2 {
                continue;
            }
            let labels = fiber_components(&fiber, &index.acting_on(&image));
            if labels.iter().any(|&l| l != labels[0]) {
                return Err(image);
            }
        }
    }
    Ok(())
}

/// Number of invariant monomials in each total degree `0..=max_degree`.
pub fn invariant_monomial_count(w: &WeightSystem, max_degree: u32) -> Vec<u64> {
    (0..=max_degree)
        .map(|d| {
            let mut count = 0;
            for_each_of_degree(w.len(), d, &mut |e| {
                if w.weighted_degree(e).unwrap() == 0 {
                    count += 1;
                }
            });
            count
        })
        .collect()
}

/// Generator names: `s` for the uniformizer `t^r`, then `b, c, d, ...` in
/// basis order, skipping `s` and `t`; `g<k>` once letters run out.
pub fn generator_names(count: usize, uniformizer: Option<usize>) -> Vec<String> {
    let mut letters = ('b'..='z').filter(|&c| c != 's' && c != 't');
    (0..count)
        .map(|i| {
            if Some(i) == uniformizer {
                "s".to_string()
            } else {
                letters
                    .next()
                    .map(String::from)
                    .unwrap_or_else(|| format!("g{i}"))
            }
        })
        .collect()
}

/// `Spec` of the invariant ring presented as `k[[s]][generators] / (relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricPresentation {
    pub basis: HilbertBasis,
    pub relations: Vec<Relation>,
    /// Index of the generator `t^r`, when the weights model a Galois base change.
    pub uniformizer: Option<usize>,
    pub names: Vec<String>,
    /// Every fiber up to this image degree is connected by the relations.
    pub degree_bound: u32,
}

impl ToricPresentation {
    pub fn weight_system(&self) -> &WeightSystem {
        &self.basis.weight_system
    }

    pub fn generator_count(&self) -> usize {
        self.basis.len()
    }

    /// Presentation of a given basis without requiring Galois weights.
    pub fn from_basis(basis: HilbertBasis, degree_bound: u32) -> Self {
        let (relations, degree_bound) = toric_relations_with_bound(&basis, degree_bound);
        let r = basis.weight_system.r();
        let mut pure_t = vec![0; basis.weight_system.len()];
        pure_t[0] = r as u32;
        let uniformizer = if basis.weight_system.has_galois_weights() {
            basis.generators.iter().position(|g| g.0 == pure_t)
        } else {
            None
        };
        let names = generator_names(basis.len(), uniformizer);
        ToricPresentation {
            basis,
            relations,
            uniformizer,
            names,
            degree_bound,
        }
    }

    pub fn relation_text(&self, rel: &Relation) -> String {
        format!(
            "{} = {}",
            format_monomial(&rel.lhs, &self.names),
            format_monomial(&rel.rhs, &self.names)
        )
    }

    pub fn to_json(&self) -> Value {
        let coords = coordinate_names(self.weight_system().len() - 1);
        json!({
            "weight_system": self.weight_system(),
            "generators": self.basis.generators.iter().zip(&self.names).map(|(g, name)| json!({
                "name": name,
                "exponents": g.0,
                "monomial": format_monomial(&g.0, &coords),
            })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|rel| json!({
                "lhs": rel.lhs,
                "rhs": rel.rhs,
                "text": self.relation_text(rel),
            })).collect::<Vec<_>>(),
            "uniformizer": self.uniformizer.map(|i| self.names[i].clone()),
            "degree_bound": self.degree_bound,
        })
    }
}

pub fn quotient_presentation_to_degree(w: &WeightSystem, degree_bound: u32) -> Result<ToricPresentation> {
    w.require_galois()?;
    let pres = ToricPresentation::from_basis(hilbert_basis(w), degree_bound);
    if pres.uniformizer.is_none() {
        return Err(Error::InvalidWeights("t^r missing from the Hilbert basis".into()));
    }
    Ok(pres)
}

/// The quotient model `Y/G` of affine space over `O_L` with diagonal weights.
pub fn quotient_presentation(w: &WeightSystem) -> Result<ToricPresentation> {
    quotient_presentation_to_degree(w, DEFAULT_RELATION_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(r: u64, l: &[u64]) -> WeightSystem {
        WeightSystem::new(r, l.to_vec()).unwrap()
    }

    fn gens(b: &HilbertBasis) -> Vec<Vec<u32>> {
        b.generators.iter().map(|g| g.0.clone()).collect()
    }

    /// Independent oracle: full box {0..r}^{n+1}, congruence filter, then drop
    /// every element that is a sum of two nonzero congruent box elements.
    fn box_oracle(w: &WeightSystem) -> Vec<Vec<u32>> {
        let r = w.r() as u32;
        let len = w.len();
        let mut all = Vec::new();
        let total = (r as usize + 1).pow(len as u32);
        for code in 1..total {
            let mut c = code;
            let e: Vec<u32> = (0..len)
                .map(|_| {
                    let d = (c % (r as usize + 1)) as u32;
                    c /= r as usize + 1;
                    d
                })
                .collect();
            if w.weighted_degree(&e).unwrap() == 0 {
                all.push(e);
            }
        }
        let set: std::collections::HashSet<Vec<u32>> = all.iter().cloned().collect();
        let mut minimal: Vec<Vec<u32>> = all
            .iter()
            .filter(|e| {
                !all.iter().any(|a| {
                    a != *e
                        && a.iter().zip(e.iter()).all(|(x, y)| x <= y)
                        && set.contains(&e.iter().zip(a).map(|(y, x)| y - x).collect::<Vec<_>>())
                })
            })
            .cloned()
            .collect();
        minimal.sort_by_key(|a| Monomial(a.clone()));
        minimal
    }

    #[test]
    fn invariance_examples() {
        let w = ws(2, &[1, 1]);
        assert_eq!(is_invariant_monomial(&w, &[1, 1]), Ok(true));
        assert_eq!(is_invariant_monomial(&w, &[0, 0]), Ok(true));
        assert_eq!(is_invariant_monomial(&w, &[1, 0]), Ok(false));
        assert!(matches!(is_invariant_monomial(&w, &[1]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn hilbert_basis_examples() {
        assert_eq!(gens(&hilbert_basis(&ws(2, &[1, 1]))), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(gens(&hilbert_basis(&ws(1, &[0, 0]))), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(gens(&hilbert_basis(&ws(3, &[1, 2]))), vec![vec![1, 1], vec![3, 0], vec![0, 3]]);
    }

    #[test]
    fn hilbert_basis_matches_box_oracle() {
        for r in 1..=6u64 {
            for len in 1..=3usize {
                let mut idx = vec![0u64; len];
                loop {
                    let w = ws(r, &idx);
                    assert_eq!(gens(&hilbert_basis(&w)), box_oracle(&w), "{w:?}");
                    let mut k = 0;
                    while k < len && idx[k] == r - 1 {
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == len {
                        break;
                    }
                    idx[k] += 1;
                }
            }
        }
    }

    #[test]
    fn relation_examples() {
        let rel = toric_relations(&hilbert_basis(&ws(2, &[1, 1])));
        assert_eq!(rel, vec![Relation { lhs: vec![1, 0, 1], rhs: vec![0, 2, 0] }]);
        assert!(toric_relations(&hilbert_basis(&ws(1, &[0, 0]))).is_empty());
        // basis order (tx, t^3, x^3): t^3 * x^3 = (tx)^3, lower generator degree first
        let rel = toric_relations(&hilbert_basis(&ws(3, &[1, 2])));
        assert_eq!(rel, vec![Relation { lhs: vec![0, 1, 1], rhs: vec![3, 0, 0] }]);
    }

    #[test]
    fn integer_kernel_annihilates() {
        let a = vec![vec![2, 1, 0], vec![0, 1, 2]];
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(k[0] == vec![1, -2, 1] || k[0] == vec![-1, 2, -1]);
        let b = vec![vec![3, 1, 0, 2], vec![0, 1, 3, 1]];
        for v in integer_kernel(&b) {
            for row in &b {
                assert_eq!(row.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn presentation_examples() {
        let p = quotient_presentation(&ws(2, &[1, 1])).unwrap();
        assert_eq!(p.names, vec!["s", "b", "c"]);
        assert_eq!(p.uniformizer, Some(0));
        assert_eq!(p.relation_text(&p.relations[0]), "s*c = b^2");

        let p = quotient_presentation(&ws(2, &[1, 0])).unwrap();
        assert_eq!(gens(&p.basis), vec![vec![0, 1], vec![2, 0]]);
        assert!(p.relations.is_empty());
        assert_eq!(p.names, vec!["b", "s"]);

        assert_eq!(
            quotient_presentation(&ws(2, &[0, 1])),
            Err(Error::NotGaloisWeights { r: 2, ell0: 0 })
        );

        let p = quotient_presentation(&ws(3, &[1, 2])).unwrap();
        assert_eq!(p.names, vec!["b", "s", "c"]);
        assert_eq!(p.relation_text(&p.relations[0]), "s*c = b^3");
    }

    #[test]
    fn count_examples() {
        assert_eq!(invariant_monomial_count(&ws(2, &[1, 1]), 2), vec![1, 0, 3]);
        assert_eq!(invariant_monomial_count(&ws(1, &[0]), 3), vec![1, 1, 1, 1]);
        // degree 2: t*x; degree 3: t^3, x^3 (t^2 x, t x^2 have weight 4, 5)
        assert_eq!(invariant_monomial_count(&ws(3, &[1, 2]), 3), vec![1, 0, 1, 2]);
    }

    #[test]
    fn certificates_and_minimality() {
        for w in [ws(2, &[1, 1]), ws(3, &[1, 2, 1]), ws(4, &[1, 1, 3]), ws(5, &[1, 2, 3])] {
            let b = hilbert_basis(&w);
            let rel = toric_relations_to_degree(&b, 10);
            assert!(generation_certificate(&b, 10).is_ok());
            assert!(connectivity_certificate(&b, &rel, 10).is_ok());
            for rm in 0..rel.len() {
                let mut fewer = rel.clone();
                fewer.remove(rm);
                assert!(connectivity_certificate(&b, &fewer, 10).is_err(), "{w:?} relation {rm} redundant");
            }
            for r in &rel {
                assert_eq!(b.image(&r.lhs), b.image(&r.rhs));
                assert!(Monomial(r.lhs.clone()) < Monomial(r.rhs.clone()));
            }
        }
    }

    #[test]
    fn missing_generator_breaks_generation() {
        let mut b = hilbert_basis(&ws(3, &[1, 2]));
        b.generators.remove(0);
        assert_eq!(generation_certificate(&b, 6), Err(Monomial(vec![1, 1])));
    }

    #[test]
    fn names_skip_s_and_t() {
        let names = generator_names(20, Some(3));
        assert_eq!(&names[..5], &["b", "c", "d", "s", "e"]);
        assert!(!names.contains(&"t".to_string()));
        assert_eq!(generator_names(30, None)[29], "g29");
    }
}
