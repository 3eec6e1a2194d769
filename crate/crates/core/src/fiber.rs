//! Fixed loci, the special-fiber algebra `k ⊗_{A^G} A`, the affine-space
//! fibers of `b: Z_k -> Y^G`, and sections of the quotient through fixed points.
//!
//! Models are products of affine spaces, split tori and projective spaces
//! over `O_L`, each carrying a diagonal action; fixed loci are taken with
//! their reduced structure (in the tame case the scheme-theoretic fixed locus
//! is smooth, so nothing is lost).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::WeightSystem;
use crate::algebra::series::format_monomial;
use crate::algebra::{Monomial, PrimeField, UniPoly};
use crate::error::{Error, Result};
use crate::invariant::{for_each_of_degree, minimal_zero_sum_vectors, ToricPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "dim", rename_all = "lowercase")]
pub enum Factor {
    Affine(usize),
    Torus(usize),
    Projective(usize),
}

impl Factor {
    /// Number of weights the factor consumes (homogeneous coordinates for `P^n`).
    pub fn coordinate_count(&self) -> usize {
        match *self {
            Factor::Affine(n) | Factor::Torus(n) => n,
            Factor::Projective(n) => n + 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Factor::Affine(_) => "affine",
            Factor::Torus(_) => "torus",
            Factor::Projective(_) => "projective",
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Factor::Affine(n) | Factor::Torus(n) | Factor::Projective(n) => n,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind(), self.dim())
    }
}

impl FromStr for Factor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, dim) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("factor {s:?} is not kind:dim")))?;
        let dim: usize = dim
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad dimension in {s:?}")))?;
        match kind.trim() {
            "affine" | "a" => Ok(Factor::Affine(dim)),
            "torus" | "gm" => Ok(Factor::Torus(dim)),
            "projective" | "p" => Ok(Factor::Projective(dim)),
            other => Err(Error::InvalidInput(format!("unknown factor kind {other:?}"))),
        }
    }
}

/// A product of affine, torus and projective factors over `O_L` with a
/// diagonal action. `weights[0]` is the weight on `t`; the remaining weights
/// are consumed factor by factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct StratifiedModel {
    factors: Vec<Factor>,
    weights: WeightSystem,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelRepr {
    factors: Vec<Factor>,
    weights: WeightSystem,
}

impl TryFrom<ModelRepr> for StratifiedModel {
    type Error = Error;
    fn try_from(m: ModelRepr) -> Result<Self> {
        StratifiedModel::new(m.factors, m.weights)
    }
}

impl From<StratifiedModel> for ModelRepr {
    fn from(m: StratifiedModel) -> Self {
        ModelRepr {
            factors: m.factors,
            weights: m.weights,
        }
    }
}

impl StratifiedModel {
    pub fn new(factors: Vec<Factor>, weights: WeightSystem) -> Result<Self> {
        weights.require_galois()?;
        let needed: usize = factors.iter().map(Factor::coordinate_count).sum();
        if weights.len() != needed + 1 {
            return Err(Error::LengthMismatch {
                expected: needed + 1,
                found: weights.len(),
            });
        }
        let weights = WeightSystem::galois(weights.r(), weights.weights().to_vec())?;
        Ok(Self { factors, weights })
    }

    /// Parses `affine:1,projective:2` style descriptions.
    pub fn parse(description: &str, weights: WeightSystem) -> Result<Self> {
        let factors = description
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Factor>>>()?;
        Self::new(factors, weights)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn r(&self) -> u64 {
        self.weights.r()
    }

    /// Per-factor slices of coordinate weights.
    pub fn factor_weights(&self) -> Vec<&[u64]> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut pos = 1;
        for f in &self.factors {
            let k = f.coordinate_count();
            out.push(&self.weights.weights()[pos..pos + k]);
            pos += k;
        }
        out
    }

    pub fn description(&self) -> String {
        self.factors
            .iter()
            .map(Factor::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The fixed piece contributed by one factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComponentPart {
    /// `A^dim`, the zero-weight coordinate subspace.
    Affine { dim: usize },
    /// The whole torus (only when every weight vanishes).
    Torus { dim: usize },
    /// The `P^{multiplicity-1}` spanned by homogeneous coordinates of weight `weight_value`.
    Projective { weight_value: u64, multiplicity: usize },
}

impl ComponentPart {
    pub fn dimension(&self) -> usize {
        match *self {
            ComponentPart::Affine { dim } | ComponentPart::Torus { dim } => dim,
            ComponentPart::Projective { multiplicity, .. } => multiplicity - 1,
        }
    }

    fn to_json(&self) -> Value {
        match *self {
            ComponentPart::Affine { dim } => json!({"factor": "affine", "dimension": dim}),
            ComponentPart::Torus { dim } => json!({"factor": "torus", "dimension": dim}),
            ComponentPart::Projective {
                weight_value,
                multiplicity,
            } => json!({
                "factor": "projective",
                "dimension": multiplicity - 1,
                "weight_value": weight_value,
                "multiplicity": multiplicity,
            }),
        }
    }
}

/// One connected component of `Y^G`: a product with one part per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    pub parts: Vec<ComponentPart>,
}

impl FixedComponent {
    pub fn dimension(&self) -> usize {
        self.parts.iter().map(ComponentPart::dimension).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLocusDescription {
    pub components: Vec<FixedComponent>,
    pub empty: bool,
}

fn factor_parts(factor: Factor, weights: &[u64]) -> Vec<ComponentPart> {
    match factor {
        Factor::Affine(_) => vec![ComponentPart::Affine {
            dim: weights.iter().filter(|&&w| w == 0).count(),
        }],
        Factor::Torus(n) => {
            if weights.iter().all(|&w| w == 0) {
                vec![ComponentPart::Torus { dim: n }]
            } else {
                vec![]
            }
        }
        Factor::Projective(_) => {
            let mut values: Vec<u64> = weights.to_vec();
            values.sort_unstable();
            values.dedup();
            values
                .into_iter()
                .map(|c| ComponentPart::Projective {
                    weight_value: c,
                    multiplicity: weights.iter().filter(|&&w| w == c).count(),
                })
                .collect()
        }
    }
}

pub fn fixed_locus(m: &StratifiedModel) -> FixedLocusDescription {
    let mut components = vec![FixedComponent { parts: vec![] }];
    for (&factor, weights) in m.factors().iter().zip(m.factor_weights()) {
        let parts = factor_parts(factor, weights);
        components = components
            .iter()
            .flat_map(|c| {
                parts.iter().map(move |p| {
                    let mut next = c.clone();
                    next.parts.push(p.clone());
                    next
                })
            })
            .collect();
    }
    let empty = components.is_empty();
    FixedLocusDescription { components, empty }
}

/// Dimension `m` of the affine space `b^{-1}(y)` over points `y` of the
/// component: the number of local coordinates with nonzero weight.
pub fn fiber_dimension(m: &StratifiedModel, component: &FixedComponent) -> Result<usize> {
    if !fixed_locus(m).components.contains(component) {
        return Err(Error::ComponentMismatch);
    }
    Ok(m
        .factor_weights()
        .iter()
        .zip(&component.parts)
        .map(|(weights, part)| match *part {
            ComponentPart::Affine { .. } => weights.iter().filter(|&&w| w != 0).count(),
            ComponentPart::Torus { .. } => 0,
            ComponentPart::Projective { weight_value, .. } => {
                weights.iter().filter(|&&w| w != weight_value).count()
            }
        })
        .sum())
}

pub fn has_integral_point(m: &StratifiedModel) -> bool {
    !fixed_locus(m).empty
}

pub fn fixed_locus_json(m: &StratifiedModel) -> Result<Value> {
    let locus = fixed_locus(m);
    let comps = locus
        .components
        .iter()
        .map(|c| {
            Ok(json!({
                "parts": c.parts.iter().map(ComponentPart::to_json).collect::<Vec<_>>(),
                "dimension": c.dimension(),
                "fiber_dimension": fiber_dimension(m, c)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "model": m.description(),
        "weight_system": m.weights(),
        "components": comps,
        "empty": locus.empty,
        "has_integral_point": !locus.empty,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVariable {
    pub name: String,
    /// Index of the coordinate (0 = `t`) this variable is the image of.
    pub source: usize,
    pub weight: u64,
}

/// `k[x_0..x_m] / I` with `I` generated by the monomials of weighted degree
/// `0 mod r`; the variables are the nonzero-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdealPresentation {
    pub r: u64,
    pub variables: Vec<IdealVariable>,
    pub min_generators: Vec<Monomial>,
    /// Number of standard monomials.
    pub finite_dimension: Option<u64>,
}

impl MonomialIdealPresentation {
    /// Whether `x_0` is the image of the uniformizer.
    pub fn has_uniformizer(&self) -> bool {
        self.variables.first().is_some_and(|v| v.source == 0)
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.min_generators.iter().any(|g| g.0.iter().zip(e).all(|(a, b)| a <= b))
    }

    fn names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        let names = self.names();
        json!({
            "r": self.r,
            "variables": self.variables,
            "min_generators": self.min_generators.iter().map(|g| json!({
                "exponents": g.0,
                "monomial": format_monomial(&g.0, &names),
            })).collect::<Vec<_>>(),
            "finite_dimension": self.finite_dimension,
        })
    }
}

pub fn special_fiber_presentation(w: &WeightSystem) -> MonomialIdealPresentation {
    let variables: Vec<IdealVariable> = w
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l != 0)
        .enumerate()
        .map(|(k, (i, &l))| IdealVariable {
            name: format!("x{k}"),
            source: i,
            weight: l,
        })
        .collect();
    let weights: Vec<u64> = variables.iter().map(|v| v.weight).collect();
    let min_generators = minimal_zero_sum_vectors(&weights, w.r());
    // Standard monomials are zero-sum free, hence of degree < r.
    let mut standard = 0;
    for d in 0..w.r() as u32 {
        for_each_of_degree(weights.len(), d, &mut |e| {
            if !min_generators.iter().any(|g| g.0.iter().zip(e).all(|(a, b)| a <= b)) {
                standard += 1;
            }
        });
    }
    MonomialIdealPresentation {
        r: w.r(),
        variables,
        min_generators,
        finite_dimension: Some(standard),
    }
}

/// Substitutes `x_0 -> t`, `x_j -> a_j t^{l_j}` into every minimal generator
/// and checks that each lands on zero in `A[t]/(t^r)`, `A = F_p[y]`.
/// A generator of `t`-degree below `r` survives unless its coefficient vanishes.
///
/// Weights are first rescaled so the uniformizer has weight 1.
pub fn cosection_check(pres: &MonomialIdealPresentation, field: PrimeField, a: &[UniPoly]) -> Result<bool> {
    if pres.r == 1 {
        // trivial group: no moving coordinates, nothing to substitute
        if !a.is_empty() {
            return Err(Error::ArityMismatch {
                expected: 0,
                found: a.len(),
            });
        }
        return Ok(true);
    }
    let Some(first) = pres.variables.first().filter(|_| pres.has_uniformizer()) else {
        return Err(Error::NotGaloisWeights { r: pres.r, ell0: 0 });
    };
    let r = pres.r;
    let scale = (1..r.max(2))
        .find(|&u| (u * first.weight) % r == 1 % r)
        .ok_or(Error::NotGaloisWeights {
            r,
            ell0: first.weight,
        })?;
    let m = pres.variables.len() - 1;
    if a.len() != m {
        return Err(Error::ArityMismatch {
            expected: m,
            found: a.len(),
        });
    }
    let shifts: Vec<u64> = pres
        .variables
        .iter()
        .enumerate()
        .map(|(k, v)| if k == 0 { 1 } else { (v.weight * scale) % r })
        .collect();
    // Every substituted variable is a single term c * t^k, so each generator
    // maps to (prod of coefficients) * t^(sum of shifts).
    for g in &pres.min_generators {
        let t_degree: u64 = shifts.iter().zip(&g.0).map(|(&k, &e)| k * e as u64).sum();
        if t_degree >= r {
            continue;
        }
        let coeff = a
            .iter()
            .zip(&g.0[1..])
            .fold(UniPoly::constant(field, 1), |acc, (p, &e)| acc.mul(&p.pow(e)));
        if !coeff.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A section `Spec O_K -> Y/G` given on generators of the invariant ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionMap {
    pub names: Vec<String>,
    pub images: Vec<UniPoly>,
    /// Coordinates (after `t`) of the fixed point the section passes through.
    pub base_point: Vec<u64>,
    pub relations_checked: usize,
}

impl SectionMap {
    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> = self
            .names
            .iter()
            .zip(&self.images)
            .map(|(n, p)| (n.clone(), Value::String(p.format("s"))))
            .collect();
        json!({
            "sections": map,
            "base_point": self.base_point,
            "relations_checked": self.relations_checked,
        })
    }
}

/// The section through the fixed point with the given zero-weight
/// coordinates: `t^{ar} prod x_i^{e_i} -> s^a prod point_i^{e_i}` when only
/// zero-weight coordinates occur, `0` otherwise. Every relation is verified
/// in `k[s]` before returning.
pub fn section_through_fixed_point(
    pres: &ToricPresentation,
    field: PrimeField,
    point: &[u64],
) -> Result<SectionMap> {
    let w = pres.weight_system();
    if pres.uniformizer.is_none() {
        return Err(Error::NotGaloisWeights { r: w.r(), ell0: w.ell0() });
    }
    let coords = w.coordinate_weights();
    let zero_weight: Vec<usize> = (0..coords.len()).filter(|&i| coords[i] == 0).collect();
    if point.len() != zero_weight.len() {
        return Err(Error::ArityMismatch {
            expected: zero_weight.len(),
            found: point.len(),
        });
    }
    let mut base_point = vec![0; coords.len()];
    for (&i, &v) in zero_weight.iter().zip(point) {
        base_point[i] = v % field.modulus();
    }
    let r = w.r() as u32;
    let images: Vec<UniPoly> = pres
        .basis
        .generators
        .iter()
        .map(|g| {
            let moving = g.0[1..].iter().zip(coords).any(|(&e, &l)| e > 0 && l != 0);
            if moving {
                return UniPoly::zero(field);
            }
            debug_assert_eq!(g.0[0] % r, 0);
            let c = g.0[1..]
                .iter()
                .zip(&base_point)
                .fold(1, |acc, (&e, &v)| field.mul(acc, field.pow(v, e as u64)));
            UniPoly::monomial(field, c, (g.0[0] / r) as usize)
        })
        .collect();
    let eval = |u: &[u32]| {
        images
            .iter()
            .zip(u)
            .fold(UniPoly::constant(field, 1), |acc, (p, &e)| acc.mul(&p.pow(e)))
    };
    for rel in &pres.relations {
        if eval(&rel.lhs) != eval(&rel.rhs) {
            return Err(Error::NotARingMap(pres.relation_text(rel)));
        }
    }
    Ok(SectionMap {
        names: pres.names.clone(),
        images,
        base_point,
        relations_checked: pres.relations.len(),
    })
}
