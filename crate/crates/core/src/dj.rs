//! The Davis–Januszkiewicz comparison: the graphs Γ′ and Γ″, the embeddings
//! β: W(Γ) → W(Γ″) and α: W(Γ′) → W(Γ″), the subgroup E = ⟨(s,0)⟩, the
//! semidirect factorizations, and the complex Y.
//!
//! Tagged vertices are named `s@1`, `s@0`, `s@-1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::complex::{Clique, CosetComplex, CubeBall, HatGraph};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order, Vertex};
use crate::group::GraphProduct;
use crate::word::{Letter, NormalForm};

/// Largest V_inf for which all of E is enumerated.
pub const MAX_E_RANK: usize = 16;

fn tagged(name: &str, tag: i8) -> String {
    format!("{name}@{tag}")
}

fn build_tagged(gamma: &LabeledGraph, tags: [i8; 2], dprime: bool) -> Result<LabeledGraph> {
    let mut vertices = Vec::new();
    // Position of each (generator, tag) in the new graph; finite vertices use tag 1.
    let mut pos: HashMap<(usize, i8), usize> = HashMap::new();
    for s in 0..gamma.len() {
        match gamma.order(s) {
            Order::Finite(_) => {
                pos.insert((s, 1), vertices.len());
                vertices.push(Vertex {
                    name: gamma.name(s).to_string(),
                    order: gamma.order(s),
                });
            }
            Order::Infinite => {
                for t in tags {
                    pos.insert((s, t), vertices.len());
                    vertices.push(Vertex {
                        name: tagged(gamma.name(s), t),
                        order: Order::Finite(2),
                    });
                }
            }
        }
    }
    let names: HashSet<&str> = vertices.iter().map(|v| v.name.as_str()).collect();
    if names.len() != vertices.len() {
        return Err(Error::InvalidArgument(
            "tagged vertex names collide with existing names".into(),
        ));
    }
    let tags_of = |s: usize| -> Vec<i8> {
        if gamma.order(s).is_finite() {
            vec![1]
        } else {
            tags.to_vec()
        }
    };
    let mut edges = BTreeSet::new();
    for (a, b) in gamma.edges() {
        for ta in tags_of(a) {
            for tb in tags_of(b) {
                // In Γ″ the pulled-back edges only use tag 1; tag 0 is handled below.
                if dprime && (ta == 0 || tb == 0) {
                    continue;
                }
                edges.insert((pos[&(a, ta)], pos[&(b, tb)]));
            }
        }
    }
    if dprime {
        for s in gamma.infinite_vertices() {
            let zero = pos[&(s, 0)];
            for (&(t, tag), &p) in &pos {
                if p != zero && !(t == s && tag == 1) {
                    edges.insert((zero.min(p), zero.max(p)));
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(LabeledGraph::new(vertices, &edges))
}

/// Γ′: V_fin ∪ V_inf × {−1, 1}, edges pulled back from Γ.
pub fn gamma_prime(gamma: &LabeledGraph) -> Result<LabeledGraph> {
    build_tagged(gamma, [1, -1], false)
}

/// Γ″: V_fin ∪ V_inf × {0, 1}; the tag-1 part copies Γ and (s,0) is
/// adjacent to everything except (s,1).
pub fn gamma_doubleprime(gamma: &LabeledGraph) -> Result<LabeledGraph> {
    build_tagged(gamma, [1, 0], true)
}

/// An element of E ≅ (ℤ/2)^{V_inf}: bit i stands for (s_i, 0), s_i the
/// i-th infinite vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct EElement(pub u64);

impl EElement {
    pub const IDENTITY: EElement = EElement(0);

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn toggled(self, i: usize) -> EElement {
        EElement(self.0 ^ 1 << i)
    }

    pub fn compose(self, other: EElement) -> EElement {
        EElement(self.0 ^ other.0)
    }
}

/// Groups W(Γ), W(Γ′), W(Γ″) with the index bookkeeping between them.
#[derive(Debug, Clone)]
pub struct DjSetup {
    gamma: GraphProduct,
    prime: GraphProduct,
    dprime: GraphProduct,
    /// Infinite vertices of Γ; position = bit in [`EElement`].
    inf: Vec<usize>,
    /// Γ vertex → (s,1) or the finite vertex, in Γ″.
    dp_one: Vec<usize>,
    /// Γ vertex → (s,0) in Γ″.
    dp_zero: Vec<Option<usize>>,
    /// Γ vertex → (s,1) or the finite vertex, in Γ′.
    p_plus: Vec<usize>,
    /// Γ vertex → (s,−1) in Γ′.
    p_minus: Vec<Option<usize>>,
    /// Γ″ vertex → (Γ vertex, tag).
    dp_origin: Vec<(usize, i8)>,
    /// Γ′ vertex → (Γ vertex, tag).
    p_origin: Vec<(usize, i8)>,
}

impl DjSetup {
    pub fn new(gamma: LabeledGraph) -> Result<Self> {
        let inf = gamma.infinite_vertices();
        if inf.len() > MAX_E_RANK {
            return Err(Error::InvalidArgument(format!(
                "{} infinite vertices; E is enumerated only up to rank {MAX_E_RANK}",
                inf.len()
            )));
        }
        let prime = gamma_prime(&gamma)?;
        let dprime = gamma_doubleprime(&gamma)?;
        let mut dp_one = Vec::new();
        let mut dp_zero = Vec::new();
        let mut p_plus = Vec::new();
        let mut p_minus = Vec::new();
        for s in 0..gamma.len() {
            let name = gamma.name(s);
            let find = |g: &LabeledGraph, n: &str| g.index_of(n).expect("tagged vertex exists");
            if gamma.order(s).is_finite() {
                dp_one.push(find(&dprime, name));
                dp_zero.push(None);
                p_plus.push(find(&prime, name));
                p_minus.push(None);
            } else {
                dp_one.push(find(&dprime, &tagged(name, 1)));
                dp_zero.push(Some(find(&dprime, &tagged(name, 0))));
                p_plus.push(find(&prime, &tagged(name, 1)));
                p_minus.push(Some(find(&prime, &tagged(name, -1))));
            }
        }
        let mut dp_origin = vec![(0, 1); dprime.len()];
        let mut p_origin = vec![(0, 1); prime.len()];
        for s in 0..gamma.len() {
            dp_origin[dp_one[s]] = (s, 1);
            p_origin[p_plus[s]] = (s, 1);
            if let Some(z) = dp_zero[s] {
                dp_origin[z] = (s, 0);
            }
            if let Some(m) = p_minus[s] {
                p_origin[m] = (s, -1);
            }
        }
        Ok(DjSetup {
            gamma: GraphProduct::new(gamma),
            prime: GraphProduct::new(prime),
            dprime: GraphProduct::new(dprime),
            inf,
            dp_one,
            dp_zero,
            p_plus,
            p_minus,
            dp_origin,
            p_origin,
        })
    }

    pub fn gamma(&self) -> &GraphProduct {
        &self.gamma
    }

    pub fn prime(&self) -> &GraphProduct {
        &self.prime
    }

    pub fn dprime(&self) -> &GraphProduct {
        &self.dprime
    }

    pub fn e_rank(&self) -> usize {
        self.inf.len()
    }

    fn bit(&self, s: usize) -> usize {
        self.inf.iter().position(|&t| t == s).expect("infinite vertex")
    }

    fn check(group: &GraphProduct, g: &NormalForm) -> Result<()> {
        if g.presentation != group.identity().presentation {
            return Err(Error::PresentationMismatch);
        }
        Ok(())
    }

    /// All 2^{|V_inf|} elements of E.
    pub fn e_elements(&self) -> Vec<EElement> {
        (0..1u64 << self.inf.len()).map(EElement).collect()
    }

    pub fn e_names(&self, e: EElement) -> Vec<String> {
        (0..self.inf.len())
            .filter(|&i| e.contains(i))
            .map(|i| tagged(self.gamma.graph().name(self.inf[i]), 0))
            .collect()
    }

    /// The element Π (s,0) of W(Γ″) (an involution).
    pub fn e_word(&self, e: EElement) -> NormalForm {
        let letters: Vec<Letter> = (0..self.inf.len())
            .filter(|&i| e.contains(i))
            .map(|i| Letter::new(self.dp_zero[self.inf[i]].expect("infinite"), 1))
            .collect();
        self.dprime.normalize_letters(&letters).expect("valid letters")
    }

    pub fn beta(&self, g: &NormalForm) -> Result<NormalForm> {
        Self::check(&self.gamma, g)?;
        let mut out = Vec::new();
        for l in g.letters() {
            match self.dp_zero[l.gen] {
                None => out.push(Letter::new(self.dp_one[l.gen], l.exp)),
                Some(z) => {
                    let one = self.dp_one[l.gen];
                    let pair = if l.exp > 0 { [one, z] } else { [z, one] };
                    for _ in 0..l.exp.unsigned_abs() {
                        out.extend(pair.iter().map(|&x| Letter::new(x, 1)));
                    }
                }
            }
        }
        self.dprime.normalize_letters(&out)
    }

    pub fn alpha(&self, g: &NormalForm) -> Result<NormalForm> {
        Self::check(&self.prime, g)?;
        let mut out = Vec::new();
        for l in g.letters() {
            let (s, tag) = self.p_origin[l.gen];
            match tag {
                -1 => {
                    let z = self.dp_zero[s].expect("infinite");
                    for _ in 0..l.exp.rem_euclid(2) {
                        out.extend([z, self.dp_one[s], z].map(|x| Letter::new(x, 1)));
                    }
                }
                _ => out.push(Letter::new(self.dp_one[s], l.exp)),
            }
        }
        self.dprime.normalize_letters(&out)
    }

    /// Retraction W(Γ″) → E: V_fin dies, (s,0) and (s,1) both go to (s,0).
    pub fn e_projection(&self, g: &NormalForm) -> Result<EElement> {
        Self::check(&self.dprime, g)?;
        let mut e = EElement::IDENTITY;
        for l in g.letters() {
            let (s, tag) = self.dp_origin[l.gen];
            if (tag != 1 || !self.gamma.graph().order(s).is_finite()) && l.exp.rem_euclid(2) == 1 {
                e = e.toggled(self.bit(s));
            }
        }
        Ok(e)
    }

    /// Retraction W(Γ″) → E killing α(W(Γ′)): V_fin and (s,1) die, (s,0)
    /// is kept.
    pub fn e_projection_alpha(&self, g: &NormalForm) -> Result<EElement> {
        Self::check(&self.dprime, g)?;
        let mut e = EElement::IDENTITY;
        for l in g.letters() {
            let (s, tag) = self.dp_origin[l.gen];
            if tag == 0 && l.exp.rem_euclid(2) == 1 {
                e = e.toggled(self.bit(s));
            }
        }
        Ok(e)
    }

    /// g = β(a)·ê with a ∈ W(Γ), e ∈ E. The a-part is recovered by reading
    /// g·ê⁻¹ left to right while keeping its prefix in the form β(a)·ê_p:
    /// a finite letter commutes with ê_p, (s,0) toggles ê_p, and
    /// ê_p·(s,1) = β(s^{±1})·ê_p' with the sign chosen by whether ê_p holds s.
    pub fn factorize(&self, g: &NormalForm) -> Result<(NormalForm, EElement)> {
        let e = self.e_projection(g)?;
        let h = self.dprime.mul(g, &self.e_word(e));
        let mut flips = EElement::IDENTITY;
        let mut a = Vec::new();
        for l in h.letters() {
            let (s, tag) = self.dp_origin[l.gen];
            if self.gamma.graph().order(s).is_finite() {
                a.push(Letter::new(s, l.exp));
                continue;
            }
            let i = self.bit(s);
            if tag == 1 {
                a.push(Letter::new(s, if flips.contains(i) { -1 } else { 1 }));
            }
            flips = flips.toggled(i);
        }
        if flips != EElement::IDENTITY {
            return Err(Error::InvariantViolation(format!(
                "β-recovery left E-part {:?} on {}",
                self.e_names(flips),
                self.dprime.format(g)
            )));
        }
        let a = self.gamma.normalize_letters(&a)?;
        if self.dprime.mul(&self.beta(&a)?, &self.e_word(e)) != *g {
            return Err(Error::InvariantViolation(format!(
                "β(a)·ê ≠ g for {}",
                self.dprime.format(g)
            )));
        }
        Ok((a, e))
    }

    /// g = α(a′)·ê with a′ ∈ W(Γ′). Here ê_p·(s,1) is α((s,1))·ê_p or
    /// α((s,−1))·ê_p, and ê_p is unchanged.
    pub fn factorize_alpha(&self, g: &NormalForm) -> Result<(NormalForm, EElement)> {
        let e = self.e_projection_alpha(g)?;
        let h = self.dprime.mul(g, &self.e_word(e));
        let mut flips = EElement::IDENTITY;
        let mut a = Vec::new();
        for l in h.letters() {
            let (s, tag) = self.dp_origin[l.gen];
            if self.gamma.graph().order(s).is_finite() {
                a.push(Letter::new(self.p_plus[s], l.exp));
                continue;
            }
            let i = self.bit(s);
            if tag == 1 {
                let target = if flips.contains(i) {
                    self.p_minus[s].expect("infinite")
                } else {
                    self.p_plus[s]
                };
                a.push(Letter::new(target, 1));
            } else {
                flips = flips.toggled(i);
            }
        }
        if flips != EElement::IDENTITY {
            return Err(Error::InvariantViolation(format!(
                "α-recovery left E-part {:?} on {}",
                self.e_names(flips),
                self.dprime.format(g)
            )));
        }
        let a = self.prime.normalize_letters(&a)?;
        if self.dprime.mul(&self.alpha(&a)?, &self.e_word(e)) != *g {
            return Err(Error::InvariantViolation(format!(
                "α(a)·ê ≠ g for {}",
                self.dprime.format(g)
            )));
        }
        Ok((a, e))
    }

    /// No e′ ≠ e leaves g·ê′ in the image of β: the E-projection of g·ê′
    /// is e + e′, nonzero.
    pub fn factorization_unique(&self, g: &NormalForm, e: EElement) -> Result<bool> {
        self.unique_by(g, e, |x| self.e_projection(x))
    }

    /// Same for α and its retraction.
    pub fn factorization_unique_alpha(&self, g: &NormalForm, e: EElement) -> Result<bool> {
        self.unique_by(g, e, |x| self.e_projection_alpha(x))
    }

    fn unique_by(
        &self,
        g: &NormalForm,
        e: EElement,
        project: impl Fn(&NormalForm) -> Result<EElement>,
    ) -> Result<bool> {
        for other in self.e_elements() {
            if other == e {
                continue;
            }
            let moved = self.dprime.mul(g, &self.e_word(other));
            if project(&moved)? == EElement::IDENTITY {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// ê acting on W(Γ): s ↦ s⁻¹ for (s,0) ∈ e, everything else fixed.
    pub fn conj_action_gamma(&self, e: EElement, g: &NormalForm) -> Result<NormalForm> {
        Self::check(&self.gamma, g)?;
        let letters: Vec<Letter> = g
            .letters()
            .iter()
            .map(|l| {
                let flip = !self.gamma.graph().order(l.gen).is_finite() && e.contains(self.bit(l.gen));
                Letter::new(l.gen, if flip { -l.exp } else { l.exp })
            })
            .collect();
        self.gamma.normalize_letters(&letters)
    }

    /// ê acting on W(Γ′): (s,±1) ↦ (s,∓1) for (s,0) ∈ e.
    pub fn conj_action_prime(&self, e: EElement, g: &NormalForm) -> Result<NormalForm> {
        Self::check(&self.prime, g)?;
        let letters: Vec<Letter> = g
            .letters()
            .iter()
            .map(|l| {
                let (s, tag) = self.p_origin[l.gen];
                if (tag != 1 || !self.gamma.graph().order(s).is_finite()) && e.contains(self.bit(s)) {
                    let swapped = if tag == 1 { self.p_minus[s].expect("infinite") } else { self.p_plus[s] };
                    return Letter::new(swapped, l.exp);
                }
                *l
            })
            .collect();
        self.prime.normalize_letters(&letters)
    }

    /// Multiplies a finite set by E and returns it sorted.
    pub fn times_e(&self, set: &[NormalForm]) -> Vec<NormalForm> {
        let es: Vec<NormalForm> = self.e_elements().into_iter().map(|e| self.e_word(e)).collect();
        let mut out: Vec<NormalForm> = set
            .iter()
            .flat_map(|x| es.iter().map(move |e| self.dprime.mul(x, e)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Both coset identities for the infinite vertex `s`:
    /// {1, β(s)}E = {1, (s,1)}E and {1, β(s⁻¹)}E = {1, α((s,−1))}E.
    pub fn weirds_check(&self, s: usize) -> Result<bool> {
        let z = self.dp_zero[s].ok_or_else(|| Error::InvalidArgument(format!("{} is not infinite", self.gamma.graph().name(s))))?;
        let one = self.dprime.identity();
        let d = &self.dprime;
        let lhs_plus = self.times_e(&[one.clone(), self.beta(&self.gamma.generator(s, 1))?]);
        let rhs_plus = self.times_e(&[one.clone(), d.generator(self.dp_one[s], 1)]);
        let lhs_minus = self.times_e(&[one.clone(), self.beta(&self.gamma.generator(s, -1))?]);
        let szs = d.normalize_letters(&[Letter::new(z, 1), Letter::new(self.dp_one[s], 1), Letter::new(z, 1)])?;
        let rhs_minus = self.times_e(&[one, szs]);
        let size = 2 << self.inf.len();
        Ok(lhs_plus == rhs_plus && lhs_minus == rhs_minus && lhs_plus.len() == size && lhs_minus.len() == size)
    }

    /// Γ″-side generating set for a hat vertex of Δ(Γ): ⟨u⟩ for finite u,
    /// {1,(s,1)} for s+, {1, α((s,−1))} for s−.
    fn y_factor(&self, hat: &HatGraph, i: usize) -> Vec<NormalForm> {
        let h = hat.vertex(i);
        let d = &self.dprime;
        match self.dp_zero[h.gen] {
            None => match self.gamma.graph().order(h.gen) {
                Order::Finite(c) => (0..c as i64).map(|k| d.generator(self.dp_one[h.gen], k)).collect(),
                Order::Infinite => unreachable!(),
            },
            Some(z) => {
                let x = if h.sign > 0 {
                    d.generator(self.dp_one[h.gen], 1)
                } else {
                    d.normalize_letters(&[Letter::new(z, 1), Letter::new(self.dp_one[h.gen], 1), Letter::new(z, 1)])
                        .expect("valid letters")
                };
                vec![d.identity(), x]
            }
        }
    }

    /// P_C: product of the Γ″-side sets over the clique, times E.
    pub fn y_standard_set(&self, hat: &HatGraph, c: Clique) -> Vec<NormalForm> {
        let mut acc = vec![self.dprime.identity()];
        for i in c.iter() {
            let factor = self.y_factor(hat, i);
            acc = acc
                .iter()
                .flat_map(|a| factor.iter().map(move |f| (a, f)))
                .map(|(a, f)| self.dprime.mul(a, f))
                .collect();
        }
        self.times_e(&acc)
    }

    /// The part of Y spanned by the region β(B_r(Γ))·E: every coset y·P_C
    /// with y in the region that stays inside it.
    pub fn build_y_ball(&self, radius: u64, max_vertices: usize) -> Result<YBall> {
        let hat = HatGraph::new(self.gamma.graph())?;
        let base = self.gamma.enumerate_ball(radius, max_vertices)?;
        let lifted: Vec<NormalForm> = base.iter().map(|g| self.beta(g)).collect::<Result<_>>()?;
        let region = self.times_e(&lifted);
        let in_region: HashSet<&NormalForm> = region.iter().collect();
        let standard: Vec<(Clique, Vec<NormalForm>)> = hat
            .cliques()
            .into_iter()
            .map(|c| (c, self.y_standard_set(&hat, c)))
            .collect();
        let mut index: HashMap<Vec<NormalForm>, usize> = HashMap::new();
        let mut vertices: Vec<YVertex> = Vec::new();
        for y in &region {
            for (c, p) in &standard {
                let mut set: Vec<NormalForm> = p.iter().map(|x| self.dprime.mul(y, x)).collect();
                if !set.iter().all(|x| in_region.contains(x)) {
                    continue;
                }
                set.sort();
                if index.contains_key(&set) {
                    continue;
                }
                if vertices.len() >= max_vertices {
                    return Err(Error::BudgetExceeded {
                        what: "Y vertices",
                        limit: max_vertices,
                    });
                }
                index.insert(set.clone(), vertices.len());
                vertices.push(YVertex {
                    clique_size: c.len(),
                    elements: set,
                });
            }
        }
        Ok(YBall {
            radius,
            region_size: region.len(),
            vertices,
            index,
        })
    }

    /// Embedding check for both X(Γ) → Y (via β) and X(Γ′) → Y (via α).
    pub fn iso_check(&self, radius: u64, max_vertices: usize) -> Result<IsoReport> {
        let y = self.build_y_ball(radius, max_vertices)?;

        let x = CosetComplex::new(self.gamma.graph().clone())?.build_ball(radius, max_vertices)?;
        let gamma_side = self.match_side(&x, &y, |g| self.beta(g))?;

        // X(Γ′) over the α-parts of the region.
        let mut s_region = BTreeSet::new();
        for v in &y.vertices {
            for g in &v.elements {
                s_region.insert(self.factorize_alpha(g)?.0);
            }
        }
        let s_region: Vec<NormalForm> = s_region.into_iter().collect();
        let xp = CosetComplex::new(self.prime.graph().clone())?.build_region(&s_region, max_vertices)?;
        let prime_side = self.match_side(&xp, &y, |g| self.alpha(g))?;

        Ok(IsoReport {
            radius,
            y_vertices: y.len(),
            gamma: gamma_side,
            prime: prime_side,
        })
    }

    fn match_side(
        &self,
        x: &CubeBall,
        y: &YBall,
        embed: impl Fn(&NormalForm) -> Result<NormalForm>,
    ) -> Result<SideReport> {
        let mut image = Vec::with_capacity(x.len());
        for v in x.vertices() {
            let lifted: Vec<NormalForm> = v.elements.iter().map(&embed).collect::<Result<_>>()?;
            image.push(y.find(&self.times_e(&lifted)));
        }
        let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
        let all_mapped = image.iter().all(Option::is_some);
        let injective = all_mapped && hit.len() == x.len();
        let surjective = hit.len() == y.len();

        let mut order_violations = 0;
        if all_mapped {
            for v in 0..x.len() {
                for w in 0..x.len() {
                    let (a, b) = (image[v].unwrap(), image[w].unwrap());
                    if x.leq(v, w) != y.subset(a, b) {
                        order_violations += 1;
                    }
                }
            }
        }

        let mut equivariance_checked = 0;
        let mut equivariance_violations = 0;
        for h in x.complex().unit_generators() {
            let eh = embed(&h)?;
            for (v, vert) in x.vertices().iter().enumerate() {
                let Some(hv) = x.find(&x.complex().translate(&h, vert)) else { continue };
                let (Some(a), Some(b)) = (image[v], image[hv]) else { continue };
                equivariance_checked += 1;
                let mut moved: Vec<NormalForm> =
                    y.vertices[a].elements.iter().map(|z| self.dprime.mul(&eh, z)).collect();
                moved.sort();
                if moved != y.vertices[b].elements {
                    equivariance_violations += 1;
                }
            }
        }

        let correspondence = image
            .iter()
            .enumerate()
            .map(|(v, &i)| (x.label(v), i))
            .collect();
        Ok(SideReport {
            x_vertices: x.len(),
            injective,
            surjective,
            order_violations,
            equivariance_checked,
            equivariance_violations,
            correspondence,
        })
    }

    /// Dimensions of X(Γ), X(Γ′), X(Γ″) (clique numbers of the hat graphs).
    pub fn dimensions(&self) -> Result<DimensionReport> {
        let dim = |g: &LabeledGraph| HatGraph::new(g).map(|h| h.dimension());
        Ok(DimensionReport {
            gamma: dim(self.gamma.graph())?,
            gamma_prime: dim(self.prime.graph())?,
            gamma_doubleprime: dim(self.dprime.graph())?,
        })
    }

    pub fn certificate(&self, radius: u64, max_vertices: usize) -> Result<DjCertificate> {
        let g = &self.gamma;
        let mut beta_map = BTreeMap::new();
        for s in 0..g.graph().len() {
            let x = g.generator(s, 1);
            beta_map.insert(g.format(&x), self.dprime.format(&self.beta(&x)?));
        }
        let mut alpha_map = BTreeMap::new();
        for s in 0..self.prime.graph().len() {
            let x = self.prime.generator(s, 1);
            alpha_map.insert(self.prime.format(&x), self.dprime.format(&self.alpha(&x)?));
        }
        let mut factorization = Vec::new();
        let mut unique = true;
        for x in self.dprime.enumerate_ball(radius, max_vertices)? {
            let (a, e) = self.factorize(&x)?;
            let (ap, ea) = self.factorize_alpha(&x)?;
            unique &= self.factorization_unique(&x, e)? && self.factorization_unique_alpha(&x, ea)?;
            factorization.push(FactorRow {
                element: self.dprime.format(&x),
                beta_part: g.format(&a),
                alpha_part: self.prime.format(&ap),
                e_part: self.e_names(e),
            });
        }
        let e_values: BTreeSet<Vec<String>> = factorization.iter().map(|r| r.e_part.clone()).collect();
        let weirds = self
            .inf
            .iter()
            .map(|&s| Ok((g.graph().name(s).to_string(), self.weirds_check(s)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(DjCertificate {
            gamma_prime: self.prime.graph().to_text(),
            gamma_doubleprime: self.dprime.graph().to_text(),
            beta: beta_map,
            alpha: alpha_map,
            factorization_unique: unique,
            e_fibers: e_values.len(),
            e_order: 1 << self.inf.len(),
            factorization,
            weirds,
            iso: self.iso_check(radius, max_vertices)?,
            dimensions: self.dimensions()?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct YVertex {
    pub clique_size: usize,
    /// Sorted.
    pub elements: Vec<NormalForm>,
}

#[derive(Debug, Clone)]
pub struct YBall {
    pub radius: u64,
    pub region_size: usize,
    vertices: Vec<YVertex>,
    index: HashMap<Vec<NormalForm>, usize>,
}

impl YBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[YVertex] {
        &self.vertices
    }

    /// Index of the vertex with exactly this (sorted) element set.
    pub fn find(&self, set: &[NormalForm]) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn subset(&self, a: usize, b: usize) -> bool {
        let big = &self.vertices[b].elements;
        self.vertices[a].elements.iter().all(|x| big.binary_search(x).is_ok())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SideReport {
    pub x_vertices: usize,
    pub injective: bool,
    pub surjective: bool,
    pub order_violations: usize,
    pub equivariance_checked: usize,
    pub equivariance_violations: usize,
    /// X vertex label → Y vertex index.
    pub correspondence: Vec<(String, Option<usize>)>,
}

impl SideReport {
    pub fn pass(&self) -> bool {
        self.injective && self.surjective && self.order_violations == 0 && self.equivariance_violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub radius: u64,
    pub y_vertices: usize,
    /// X(Γ) → Y via β.
    pub gamma: SideReport,
    /// X(Γ′) → Y via α.
    pub prime: SideReport,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.gamma.pass() && self.prime.pass()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionReport {
    pub gamma: usize,
    pub gamma_prime: usize,
    pub gamma_doubleprime: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorRow {
    pub element: String,
    pub beta_part: String,
    pub alpha_part: String,
    pub e_part: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DjCertificate {
    pub gamma_prime: String,
    pub gamma_doubleprime: String,
    pub beta: BTreeMap<String, String>,
    pub alpha: BTreeMap<String, String>,
    pub factorization_unique: bool,
    pub e_fibers: usize,
    pub e_order: usize,
    pub factorization: Vec<FactorRow>,
    pub weirds: BTreeMap<String, bool>,
    pub iso: IsoReport,
    pub dimensions: DimensionReport,
}

impl DjCertificate {
    pub fn pass(&self) -> bool {
        self.factorization_unique
            && self.weirds.values().all(|&b| b)
            && self.iso.pass()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn setup(spec: &str) -> DjSetup {
        DjSetup::new(parse_graph(spec).unwrap()).unwrap()
    }

    #[test]
    fn graphs_for_one_infinite_vertex() {
        let g = parse_graph("s:inf").unwrap();
        let p = gamma_prime(&g).unwrap();
        let d = gamma_doubleprime(&g).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(d.len(), 2);
        assert_eq!(p.edges().len(), 0);
        assert_eq!(d.edges().len(), 0);
        assert!((0..2).all(|i| p.order(i) == Order::Finite(2) && d.order(i) == Order::Finite(2)));
    }

    #[test]
    fn finite_graphs_are_unchanged() {
        let g = parse_graph("u:3").unwrap();
        assert_eq!(gamma_prime(&g).unwrap(), g);
        assert_eq!(gamma_doubleprime(&g).unwrap(), g);
    }

    #[test]
    fn doubleprime_edges_for_an_edge() {
        let d = gamma_doubleprime(&parse_graph("s:inf; t:inf; edge s t").unwrap()).unwrap();
        assert_eq!(d.len(), 4);
        let i = |n: &str| d.index_of(n).unwrap();
        assert!(d.adjacent(i("s@0"), i("t@0")));
        assert!(d.adjacent(i("s@0"), i("t@1")));
        assert!(d.adjacent(i("s@1"), i("t@0")));
        assert!(d.adjacent(i("s@1"), i("t@1")));
        assert!(!d.adjacent(i("s@0"), i("s@1")));
        assert!(!d.adjacent(i("t@0"), i("t@1")));
        assert_eq!(d.edges().len(), 4);
        let p = gamma_prime(&parse_graph("s:inf; t:inf; edge s t").unwrap()).unwrap();
        assert_eq!(p.edges().len(), 4);
    }

    #[test]
    fn beta_and_alpha_on_generators() {
        let dj = setup("s:inf; u:3");
        let d = dj.dprime();
        let bs = dj.beta(&dj.gamma().generator(0, 1)).unwrap();
        assert_eq!(d.format(&bs), "s@1 s@0");
        let bu = dj.beta(&dj.gamma().generator(1, 1)).unwrap();
        assert_eq!(d.format(&bu), "u");
        let m = dj.prime().graph().index_of("s@-1").unwrap();
        let am = dj.alpha(&dj.prime().generator(m, 1)).unwrap();
        assert_eq!(d.format(&am), "s@0 s@1 s@0");
        assert!(dj.beta(&dj.prime().generator(0, 1)).is_err());
    }

    #[test]
    fn e_projection_examples() {
        let dj = setup("s:inf; u:3");
        let bs = dj.beta(&dj.gamma().generator(0, 1)).unwrap();
        assert_eq!(dj.e_projection(&bs).unwrap(), EElement::IDENTITY);
        let z = dj.dprime().graph().index_of("s@0").unwrap();
        assert_eq!(dj.e_projection(&dj.dprime().generator(z, 1)).unwrap(), EElement(1));
        let u = dj.dprime().graph().index_of("u").unwrap();
        assert_eq!(dj.e_projection(&dj.dprime().generator(u, 1)).unwrap(), EElement::IDENTITY);
    }

    #[test]
    fn factorize_examples() {
        let dj = setup("s:inf; u:3");
        let d = dj.dprime();
        let one = d.graph().index_of("s@1").unwrap();
        let (a, e) = dj.factorize(&d.generator(one, 1)).unwrap();
        assert_eq!(a, dj.gamma().generator(0, 1));
        assert_eq!(e, EElement(1));
        let (ap, e) = dj.factorize_alpha(&d.generator(one, 1)).unwrap();
        assert_eq!(dj.prime().format(&ap), "s@1");
        assert_eq!(e, EElement::IDENTITY);
        assert_eq!(dj.factorize(&d.identity()).unwrap(), (dj.gamma().identity(), EElement::IDENTITY));
        let u = d.graph().index_of("u").unwrap();
        assert_eq!(
            dj.factorize(&d.generator(u, 1)).unwrap(),
            (dj.gamma().generator(1, 1), EElement::IDENTITY)
        );
        for x in d.enumerate_ball(4, 10_000).unwrap() {
            let (_, e) = dj.factorize(&x).unwrap();
            assert!(dj.factorization_unique(&x, e).unwrap());
            let (_, e) = dj.factorize_alpha(&x).unwrap();
            assert!(dj.factorization_unique_alpha(&x, e).unwrap());
        }
    }

    #[test]
    fn conjugation_matches() {
        let dj = setup("s:inf; t:inf; u:2; edge s u");
        let d = dj.dprime();
        for e in dj.e_elements() {
            let ew = dj.e_word(e);
            for g in dj.gamma().enumerate_ball(2, 1000).unwrap() {
                let lhs = dj.beta(&dj.conj_action_gamma(e, &g).unwrap()).unwrap();
                let rhs = d.mul(&d.mul(&ew, &dj.beta(&g).unwrap()), &ew);
                assert_eq!(lhs, rhs);
            }
            for g in dj.prime().enumerate_ball(2, 1000).unwrap() {
                let lhs = dj.alpha(&dj.conj_action_prime(e, &g).unwrap()).unwrap();
                let rhs = d.mul(&d.mul(&ew, &dj.alpha(&g).unwrap()), &ew);
                assert_eq!(lhs, rhs);
            }
        }
        let s = dj.gamma().generator(0, 1);
        assert_eq!(dj.conj_action_gamma(EElement(0b10), &s).unwrap(), s);
        assert_eq!(dj.conj_action_gamma(EElement(0b01), &s).unwrap(), dj.gamma().generator(0, -1));
        let sp = dj.prime().generator(dj.prime().graph().index_of("s@1").unwrap(), 1);
        let sm = dj.prime().generator(dj.prime().graph().index_of("s@-1").unwrap(), 1);
        assert_eq!(dj.conj_action_prime(EElement(1), &sp).unwrap(), sm);
    }

    #[test]
    fn coset_identities() {
        let dj = setup("s:inf");
        assert!(dj.weirds_check(0).unwrap());
        let dj = setup("s:inf; t:inf; u:3; edge s t");
        assert!(dj.weirds_check(0).unwrap());
        assert!(dj.weirds_check(1).unwrap());
        assert!(dj.weirds_check(2).is_err());
    }

    #[test]
    fn y_matches_x_for_small_graphs() {
        for spec in ["s:inf", "u:3", "s:inf; t:inf; edge s t", "s:inf; u:2"] {
            let dj = setup(spec);
            let r = dj.iso_check(2, 100_000).unwrap();
            assert!(r.pass(), "{spec}: {r:?}");
            assert_eq!(r.gamma.x_vertices, r.y_vertices);
            assert_eq!(r.prime.x_vertices, r.y_vertices);
        }
    }

    #[test]
    fn dimensions_differ_for_two_vertices() {
        let dj = setup("s:inf; t:inf");
        let d = dj.dimensions().unwrap();
        assert_eq!((d.gamma, d.gamma_prime, d.gamma_doubleprime), (1, 1, 2));
    }
}
