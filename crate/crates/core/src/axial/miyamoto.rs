use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::{decompose_axis, source_of, AxialError};
use crate::algebra::Algebra;
use crate::designs::SteinerTripleSystem;
use crate::exact::{Matrix, Vector};
use crate::perm::Permutation;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// `SAL_CLOSURE_CAP` if set to a positive integer, else the default.
pub fn closure_cap_from_env() -> usize {
    std::env::var("SAL_CLOSURE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_CLOSURE_CAP)
}

/// The linear map `e_p ↦ e_{σ(p)}` on the reduced basis `e₁..e_{n−1}`.
pub fn permutation_operator(a: &Algebra, sigma: &Permutation) -> Result<Matrix, AxialError> {
    let columns = (1..=a.dim()).map(|p| a.generator(sigma.apply_point(p))).collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(a.dim(), &columns).map_err(crate::algebra::AlgebraError::from)?)
}

#[derive(Debug, Clone)]
pub struct MiyamotoInvolution {
    pub point: usize,
    pub sigma: Permutation,
    pub operator: Matrix,
    /// First basis pair `(p, q)` (0-based) with `τ(e_p∘e_q) ≠ τ(e_p)∘τ(e_q)`.
    pub multiplicativity_witness: Option<(usize, usize)>,
    pub is_involution: bool,
    /// Fixes `𝔅₊ + F·eᵢ` and negates `𝔅₋`.
    pub is_reflection: bool,
}

impl MiyamotoInvolution {
    pub fn is_algebra_automorphism(&self) -> bool {
        self.multiplicativity_witness.is_none()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.operator.mul_vector(v).expect("dimensions agree")
    }
}

pub fn miyamoto_involution(a: &Algebra, point: usize) -> Result<MiyamotoInvolution, AxialError> {
    let s = source_of(a)?;
    let sigma = s.sigma_involution(point);
    let operator = permutation_operator(a, &sigma)?;
    let dim = a.dim();
    let images: Vec<Vector> = (0..dim).map(|p| operator.column(p)).collect();
    let apply = |v: &Vector| operator.mul_vector(v).expect("dimensions agree");
    let multiplicativity_witness = (0..dim)
        .flat_map(|p| (p..dim).map(move |q| (p, q)))
        .find(|&(p, q)| apply(a.product(p, q)) != a.mul(&images[p], &images[q]));
    let is_involution = operator.mul_matrix(&operator).map_err(crate::algebra::AlgebraError::from)?
        == Matrix::identity(dim);
    let d = decompose_axis(a, point)?;
    let fixes = d.even_part().basis().iter().all(|v| &apply(v) == v);
    let negates = d.eigen_minus.basis().iter().all(|v| apply(v) == -v);
    Ok(MiyamotoInvolution {
        point,
        sigma,
        operator,
        multiplicativity_witness,
        is_involution,
        is_reflection: fixes && negates,
    })
}

/// The group generated by the point involutions `σᵢ: j ↦ i∘j`.
///
/// For a Hall system the `σᵢ` induce algebra automorphisms (the Miyamoto
/// involutions `τᵢ`) and the group is the Miyamoto group. Otherwise it is
/// only a permutation group on points; `acts_by_automorphisms` is false.
#[derive(Debug, Clone, Serialize)]
pub struct MiyamotoGroup {
    pub n: usize,
    #[serde(serialize_with = "serialize_perms")]
    pub generators: Vec<Permutation>,
    #[serde(skip)]
    pub elements: Vec<Permutation>,
    pub order: usize,
    pub commutator_order: usize,
    pub abelianization_order: usize,
    pub acts_by_automorphisms: bool,
    #[serde(skip)]
    pub commutator_elements: Vec<Permutation>,
}

fn serialize_perms<S: serde::Serializer>(perms: &[Permutation], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(perms.iter().map(|p| p.to_string()))
}

impl MiyamotoGroup {
    pub fn label(&self) -> &'static str {
        if self.acts_by_automorphisms {
            "Miyamoto group (algebra automorphisms)"
        } else {
            "point-permutation group, not algebra automorphisms"
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Closed under composition and inverses.
    pub fn is_group(&self) -> bool {
        let set: HashSet<&Permutation> = self.elements.iter().collect();
        self.elements.iter().all(|g| set.contains(&g.inverse()))
            && self.elements.iter().all(|g| self.generators.iter().all(|h| set.contains(&g.compose(h))))
    }
}

/// Breadth-first closure under right multiplication by generators.
fn closure(len: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>, AxialError> {
    let identity = Permutation::identity(len);
    let mut seen: HashSet<Permutation> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(g) = queue.pop_front() {
        for h in gens {
            let gh = g.compose(h);
            if !seen.contains(&gh) {
                if seen.len() >= cap {
                    return Err(AxialError::ClosureCapExceeded(cap));
                }
                seen.insert(gh.clone());
                queue.push_back(gh);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Normal closure in `⟨gens⟩` of the commutators of pairs of generators,
/// which is the derived subgroup.
fn derived_subgroup(len: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>, AxialError> {
    let mut normal_gens: BTreeSet<Permutation> = BTreeSet::new();
    for (x, a) in gens.iter().enumerate() {
        for b in &gens[x + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                normal_gens.insert(c);
            }
        }
    }
    loop {
        let list: Vec<Permutation> = normal_gens.iter().cloned().collect();
        let group = closure(len, &list, cap)?;
        let members: HashSet<&Permutation> = group.iter().collect();
        let fresh: Vec<Permutation> = list
            .iter()
            .flat_map(|h| gens.iter().map(move |g| g.conjugate(h)))
            .filter(|c| !members.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(group);
        }
        normal_gens.extend(fresh);
    }
}

pub fn miyamoto_group(s: &SteinerTripleSystem, cap: usize) -> Result<MiyamotoGroup, AxialError> {
    let n = s.n();
    let generators: Vec<Permutation> = (1..=n).map(|i| s.sigma_involution(i)).collect();
    let elements = closure(n, &generators, cap)?;
    let commutator_elements = derived_subgroup(n, &generators, cap)?;
    let order = elements.len();
    let commutator_order = commutator_elements.len();
    Ok(MiyamotoGroup {
        n,
        generators,
        elements,
        order,
        commutator_order,
        abelianization_order: order / commutator_order,
        acts_by_automorphisms: s.is_hall(),
        commutator_elements,
    })
}

/// Relations among the generators alone; witnesses are 1-based points.
#[derive(Debug, Clone, Serialize)]
pub struct TranspositionRelations {
    pub non_involution: Option<usize>,
    /// `(i, j)` with `σᵢσⱼσᵢ ≠ σ_{i∘j}`.
    pub conjugation_failure: Option<(usize, usize)>,
    /// `(i, j, order of σᵢσⱼ)` with that order different from 3.
    pub order_failure: Option<(usize, usize, u64)>,
}

impl TranspositionRelations {
    pub fn ok(&self) -> bool {
        self.non_involution.is_none() && self.conjugation_failure.is_none() && self.order_failure.is_none()
    }
}

pub fn transposition_relations(s: &SteinerTripleSystem) -> TranspositionRelations {
    let n = s.n();
    let sigma: Vec<Permutation> = (1..=n).map(|i| s.sigma_involution(i)).collect();
    let non_involution = (1..=n).find(|&i| !sigma[i - 1].compose(&sigma[i - 1]).is_identity());
    let pairs = || (1..=n).flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)));
    let conjugation_failure = pairs().find(|&(i, j)| {
        let (a, b) = (&sigma[i - 1], &sigma[j - 1]);
        a.compose(b).compose(a) != sigma[s.join(i, j) - 1]
    });
    let order_failure = pairs().find_map(|(i, j)| {
        let order = sigma[i - 1].compose(&sigma[j - 1]).order();
        (order != 3).then_some((i, j, order))
    });
    TranspositionRelations { non_involution, conjugation_failure, order_failure }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeTranspositionReport {
    pub relations: TranspositionRelations,
    pub commutator_order: usize,
    pub commutator_is_3_group: bool,
}

impl ThreeTranspositionReport {
    pub fn ok(&self) -> bool {
        self.relations.ok() && self.commutator_is_3_group
    }
}

fn is_power_of_3(mut k: usize) -> bool {
    while k > 1 && k % 3 == 0 {
        k /= 3;
    }
    k == 1
}

/// Generator relations plus "`[G,G]` has 3-power order".
pub fn three_transposition_check(s: &SteinerTripleSystem, g: &MiyamotoGroup) -> ThreeTranspositionReport {
    ThreeTranspositionReport {
        relations: transposition_relations(s),
        commutator_order: g.commutator_order,
        commutator_is_3_group: is_power_of_3(g.commutator_order),
    }
}
