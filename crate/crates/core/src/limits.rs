//! Universal constructions decided by exhaustive scans: terminal and initial
//! objects, products, equalizers, pullbacks, general finite limits, the
//! construction of limits from products and equalizers, transport of limits
//! along adjoint equivalences, and finite-diagram shapes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::adjoint::{check_adjunction, is_adjoint_equivalence, Adjunction};
use crate::category::{slice_category, FinCategory};
use crate::error::{Error, Result};
use crate::report::LawReport;
use crate::transfor::{
    compose_functor, is_natural_iso, op_functor, same_category, Cat, FinFunctor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UniversalKind {
    Initial,
    Terminal,
}

/// A terminal object with its chosen arrow from every object, or an initial
/// object with its chosen arrow to every object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalObject {
    pub kind: UniversalKind,
    pub object: usize,
    pub arrows: Vec<usize>,
}

/// A cone problem in `C`: legs into `targets`, subject to
/// `d ∘ leg_a ≈ leg_b` for every `(a, b, d)` in `eqs`.
struct ConeProblem<'a> {
    c: &'a FinCategory,
    targets: Vec<usize>,
    eqs: Vec<(usize, usize, usize)>,
}

impl<'a> ConeProblem<'a> {
    fn for_diagram(d: &'a FinFunctor) -> Self {
        let j = d.source();
        ConeProblem {
            c: d.target(),
            targets: (0..j.num_objects()).map(|x| d.obj(x)).collect(),
            eqs: (0..j.num_arrows())
                .map(|f| (j.source(f), j.target(f), d.arr(f)))
                .collect(),
        }
    }

    fn holds(&self, legs: &[usize], &(a, b, d): &(usize, usize, usize)) -> bool {
        matches!(self.c.composite(d, legs[a]), Some(h) if self.c.equiv(h, legs[b]))
    }

    fn is_cone(&self, apex: usize, legs: &[usize]) -> bool {
        legs.len() == self.targets.len()
            && legs.iter().zip(&self.targets).all(|(&l, &t)| {
                l < self.c.num_arrows() && self.c.source(l) == apex && self.c.target(l) == t
            })
            && self.eqs.iter().all(|e| self.holds(legs, e))
    }

    /// Every cone at `apex`, legs drawn from class representatives, in
    /// lexicographic order.
    fn cones_at(&self, apex: usize) -> Vec<Vec<usize>> {
        let choices: Vec<Vec<usize>> = self
            .targets
            .iter()
            .map(|&t| self.c.hom_classes(apex, t))
            .collect();
        let mut out = Vec::new();
        let mut legs = Vec::with_capacity(self.targets.len());
        self.extend(&choices, &mut legs, &mut out);
        out
    }

    fn extend(&self, choices: &[Vec<usize>], legs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = legs.len();
        if k == choices.len() {
            out.push(legs.clone());
            return;
        }
        for &l in &choices[k] {
            legs.push(l);
            let ok = self
                .eqs
                .iter()
                .filter(|&&(a, b, _)| a.max(b) == k)
                .all(|e| self.holds(legs, e));
            if ok {
                self.extend(choices, legs, out);
            }
            legs.pop();
        }
    }

    /// Classes of `u : z → apex` with `legs_j ∘ u ≈ other_j` for all `j`.
    fn factorizations(&self, apex: usize, legs: &[usize], z: usize, other: &[usize]) -> Vec<usize> {
        self.c
            .hom_classes(z, apex)
            .into_iter()
            .filter(|&u| {
                legs.iter()
                    .zip(other)
                    .all(|(&l, &o)| matches!(self.c.composite(l, u), Some(h) if self.c.equiv(h, o)))
            })
            .collect()
    }

    fn is_universal(&self, apex: usize, legs: &[usize]) -> bool {
        self.is_cone(apex, legs)
            && (0..self.c.num_objects()).all(|z| {
                self.cones_at(z)
                    .iter()
                    .all(|other| self.factorizations(apex, legs, z, other).len() == 1)
            })
    }

    fn find(&self) -> Option<(usize, Vec<usize>)> {
        (0..self.c.num_objects()).find_map(|apex| {
            self.cones_at(apex)
                .into_iter()
                .find(|legs| self.is_universal(apex, legs))
                .map(|legs| (apex, legs))
        })
    }
}

pub fn find_terminal(c: &FinCategory) -> Option<UniversalObject> {
    let p = ConeProblem {
        c,
        targets: vec![],
        eqs: vec![],
    };
    let (t, _) = p.find()?;
    Some(UniversalObject {
        kind: UniversalKind::Terminal,
        object: t,
        arrows: (0..c.num_objects())
            .map(|z| c.hom_classes(z, t)[0])
            .collect(),
    })
}

/// Computed as a terminal object of `op(C)`.
pub fn find_initial(c: &FinCategory) -> Option<UniversalObject> {
    find_terminal(&c.op()).map(|t| terminal_to_initial_op(&t))
}

/// A terminal object of `C` read as an initial object of `op(C)`. Arrow
/// indices are shared between a category and its opposite, so only the
/// kind changes.
pub fn terminal_to_initial_op(t: &UniversalObject) -> UniversalObject {
    UniversalObject {
        kind: UniversalKind::Initial,
        ..t.clone()
    }
}

pub fn initial_to_terminal_op(i: &UniversalObject) -> UniversalObject {
    UniversalObject {
        kind: UniversalKind::Terminal,
        ..i.clone()
    }
}

/// Checks a claimed terminal or initial object of `c` by a full scan.
pub fn is_universal_object(c: &FinCategory, u: &UniversalObject) -> bool {
    let n = c.num_objects();
    if u.object >= n || u.arrows.len() != n {
        return false;
    }
    (0..n).all(|z| {
        let (a, b) = match u.kind {
            UniversalKind::Terminal => (z, u.object),
            UniversalKind::Initial => (u.object, z),
        };
        let f = u.arrows[z];
        c.hom_classes(a, b).len() == 1 && f < c.num_arrows() && c.source(f) == a && c.target(f) == b
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductData {
    pub object: usize,
    pub proj1: usize,
    pub proj2: usize,
}

impl ProductData {
    /// The mediating arrow `⟨f, g⟩`, found by search.
    pub fn pairing(&self, c: &FinCategory, f: usize, g: usize) -> Option<usize> {
        if c.source(f) != c.source(g) {
            return None;
        }
        c.hom_classes(c.source(f), self.object)
            .into_iter()
            .find(|&u| {
                matches!(c.composite(self.proj1, u), Some(h) if c.equiv(h, f))
                    && matches!(c.composite(self.proj2, u), Some(h) if c.equiv(h, g))
            })
    }
}

fn pair_problem(c: &FinCategory, a: usize, b: usize) -> ConeProblem<'_> {
    ConeProblem {
        c,
        targets: vec![a, b],
        eqs: vec![],
    }
}

pub fn find_product(c: &FinCategory, a: usize, b: usize) -> Option<ProductData> {
    let (object, legs) = pair_problem(c, a, b).find()?;
    Some(ProductData {
        object,
        proj1: legs[0],
        proj2: legs[1],
    })
}

/// Whether the projections alone exhibit a product of `a` and `b`.
pub fn check_product(c: &FinCategory, a: usize, b: usize, proj1: usize, proj2: usize) -> bool {
    proj1 < c.num_arrows()
        && proj2 < c.num_arrows()
        && pair_problem(c, a, b).is_universal(c.source(proj1), &[proj1, proj2])
}

/// A coproduct of `a` and `b`, as a product in `op(C)`; `proj1`, `proj2`
/// are then the injections.
pub fn find_coproduct(c: &FinCategory, a: usize, b: usize) -> Option<ProductData> {
    find_product(&c.op(), a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualizerData {
    pub object: usize,
    pub inclusion: usize,
}

fn equalizer_problem(c: &FinCategory, f: usize, g: usize) -> Result<ConeProblem<'_>> {
    if f >= c.num_arrows() || g >= c.num_arrows() {
        return Err(Error::Structure("arrow index out of range".into()));
    }
    if !c.is_parallel(f, g) {
        return Err(Error::Precondition(format!(
            "{} and {} are not parallel",
            c.label(f),
            c.label(g)
        )));
    }
    Ok(ConeProblem {
        c,
        targets: vec![c.source(f), c.target(f)],
        eqs: vec![(0, 1, f), (0, 1, g)],
    })
}

pub fn find_equalizer(c: &FinCategory, f: usize, g: usize) -> Result<Option<EqualizerData>> {
    Ok(equalizer_problem(c, f, g)?
        .find()
        .map(|(object, legs)| EqualizerData {
            object,
            inclusion: legs[0],
        }))
}

pub fn check_equalizer(c: &FinCategory, f: usize, g: usize, inclusion: usize) -> Result<bool> {
    let p = equalizer_problem(c, f, g)?;
    let Some(fe) = c.composite(f, inclusion) else {
        return Ok(false);
    };
    Ok(p.is_universal(c.source(inclusion), &[inclusion, fe]))
}

pub fn find_coequalizer(c: &FinCategory, f: usize, g: usize) -> Result<Option<EqualizerData>> {
    find_equalizer(&c.op(), f, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackData {
    pub object: usize,
    pub proj1: usize,
    pub proj2: usize,
}

fn pullback_problem(c: &FinCategory, f: usize, g: usize) -> Result<ConeProblem<'_>> {
    if f >= c.num_arrows() || g >= c.num_arrows() {
        return Err(Error::Structure("arrow index out of range".into()));
    }
    if c.target(f) != c.target(g) {
        return Err(Error::Precondition(format!(
            "{} and {} do not share a target",
            c.label(f),
            c.label(g)
        )));
    }
    Ok(ConeProblem {
        c,
        targets: vec![c.source(f), c.source(g), c.target(f)],
        eqs: vec![(0, 2, f), (1, 2, g)],
    })
}

/// Pullback by direct scan over cones on the cospan.
pub fn find_pullback_direct(c: &FinCategory, f: usize, g: usize) -> Result<Option<PullbackData>> {
    Ok(pullback_problem(c, f, g)?
        .find()
        .map(|(object, legs)| PullbackData {
            object,
            proj1: legs[0],
            proj2: legs[1],
        }))
}

pub fn check_pullback(c: &FinCategory, f: usize, g: usize, pb: &PullbackData) -> Result<bool> {
    let p = pullback_problem(c, f, g)?;
    let Some(fp) = c.composite(f, pb.proj1) else {
        return Ok(false);
    };
    Ok(p.is_universal(pb.object, &[pb.proj1, pb.proj2, fp]))
}

/// Pullback computed as a product in the slice over the common target,
/// then checked against the direct scan.
pub fn find_pullback(c: &FinCategory, f: usize, g: usize) -> Result<Option<PullbackData>> {
    pullback_problem(c, f, g)?;
    let slice = slice_category(c, c.target(f));
    let (sf, sg) = match (
        slice.object_of(c.eq_class(f)),
        slice.object_of(c.eq_class(g)),
    ) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Internal("cospan legs missing from the slice".into())),
    };
    let via_slice = find_product(&slice.category, sf, sg).map(|p| PullbackData {
        object: slice.objects[p.object].over,
        proj1: slice.underlying[p.proj1],
        proj2: slice.underlying[p.proj2],
    });
    let direct = find_pullback_direct(c, f, g)?;
    match (&via_slice, &direct) {
        (None, None) => Ok(None),
        (Some(pb), Some(_)) if check_pullback(c, f, g, pb)? => Ok(via_slice),
        _ => Err(Error::Internal(
            "slice product and direct pullback scan disagree".into(),
        )),
    }
}

/// A cone over `diagram : J → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData {
    pub diagram: FinFunctor,
    pub apex: usize,
    pub legs: Vec<usize>,
}

impl ConeData {
    pub fn is_cone(&self) -> bool {
        ConeProblem::for_diagram(&self.diagram).is_cone(self.apex, &self.legs)
    }
}

/// A limiting cone. Mediators are found by search when asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitData {
    pub cone: ConeData,
}

impl LimitData {
    /// Wraps a cone after the full universality scan.
    pub fn new(cone: ConeData) -> Result<Self> {
        let p = ConeProblem::for_diagram(&cone.diagram);
        if !p.is_cone(cone.apex, &cone.legs) {
            return Err(Error::Precondition("legs do not form a cone".into()));
        }
        if !p.is_universal(cone.apex, &cone.legs) {
            return Err(Error::Precondition("cone is not universal".into()));
        }
        Ok(LimitData { cone })
    }

    pub fn apex(&self) -> usize {
        self.cone.apex
    }

    pub fn legs(&self) -> &[usize] {
        &self.cone.legs
    }

    pub fn diagram(&self) -> &FinFunctor {
        &self.cone.diagram
    }

    /// The factorization of `other` through this limit, unique up to `≈`.
    pub fn mediate(&self, other: &ConeData) -> Option<usize> {
        if other.diagram != self.cone.diagram || !other.is_cone() {
            return None;
        }
        let p = ConeProblem::for_diagram(&self.cone.diagram);
        let us = p.factorizations(self.cone.apex, &self.cone.legs, other.apex, &other.legs);
        (us.len() == 1).then(|| us[0])
    }

    pub fn verify(&self) -> bool {
        ConeProblem::for_diagram(&self.cone.diagram).is_universal(self.cone.apex, &self.cone.legs)
    }
}

/// Every cone over `d`, in order of apex and then legs.
pub fn enumerate_cones(d: &FinFunctor) -> Vec<ConeData> {
    let p = ConeProblem::for_diagram(d);
    (0..d.target().num_objects())
        .flat_map(|apex| {
            p.cones_at(apex).into_iter().map(move |legs| ConeData {
                diagram: d.clone(),
                apex,
                legs,
            })
        })
        .collect()
}

/// Tries every apex and leg family, keeping the first cone through which
/// every cone factors uniquely.
pub fn brute_force_limit(d: &FinFunctor) -> Option<LimitData> {
    let (apex, legs) = ConeProblem::for_diagram(d).find()?;
    Some(LimitData {
        cone: ConeData {
            diagram: d.clone(),
            apex,
            legs,
        },
    })
}

/// A colimit of `d`, returned as a limit of the opposite diagram.
pub fn brute_force_colimit(d: &FinFunctor) -> Option<LimitData> {
    brute_force_limit(&op_functor(d))
}

/// Comparison isomorphism between two limits of one diagram: `forward`
/// goes from the apex of `a` to the apex of `b`. Both triangles with the
/// legs commute and the round trips are `≈` identities.
pub fn compare_limits(a: &LimitData, b: &LimitData) -> Option<(usize, usize)> {
    if a.diagram() != b.diagram() {
        return None;
    }
    let c = a.diagram().target();
    let forward = b.mediate(&a.cone)?;
    let backward = a.mediate(&b.cone)?;
    let round = |x: usize, y: usize, apex: usize| matches!(c.composite(x, y), Some(h) if c.equiv(h, c.identity(apex)));
    let commutes = a
        .legs()
        .iter()
        .zip(b.legs())
        .all(|(&la, &lb)| matches!(c.composite(lb, forward), Some(h) if c.equiv(h, la)));
    (round(backward, forward, a.apex()) && round(forward, backward, b.apex()) && commutes)
        .then_some((forward, backward))
}

/// A left-nested iterated product `((X₀ × X₁) × X₂) × …`, the terminal
/// object when there are no factors.
struct NaryProduct {
    object: usize,
    projections: Vec<usize>,
    steps: Vec<ProductData>,
    terminal: Option<UniversalObject>,
}

impl NaryProduct {
    fn build(c: &FinCategory, factors: &[usize], what: &str) -> Result<Self> {
        let Some((&first, rest)) = factors.split_first() else {
            let t = find_terminal(c).ok_or_else(|| {
                Error::StructureAbsent(format!("terminal object (empty product for {what})"))
            })?;
            return Ok(NaryProduct {
                object: t.object,
                projections: vec![],
                steps: vec![],
                terminal: Some(t),
            });
        };
        let mut object = first;
        let mut projections = vec![c.identity(first)];
        let mut steps = Vec::new();
        for &x in rest {
            let p = find_product(c, object, x).ok_or_else(|| {
                Error::StructureAbsent(format!(
                    "binary product of {} and {} (building {what})",
                    c.object_name(object),
                    c.object_name(x)
                ))
            })?;
            projections = projections.into_iter().map(|pi| c.c(pi, p.proj1)).collect();
            projections.push(p.proj2);
            object = p.object;
            steps.push(p);
        }
        Ok(NaryProduct {
            object,
            projections,
            steps,
            terminal: None,
        })
    }

    /// The arrow `z → ∏` with the given components.
    fn tuple(&self, c: &FinCategory, z: usize, comps: &[usize]) -> Option<usize> {
        if let Some(t) = &self.terminal {
            return Some(t.arrows[z]);
        }
        let mut u = comps[0];
        for (p, &f) in self.steps.iter().zip(&comps[1..]) {
            u = p.pairing(c, u, f)?;
        }
        Some(u)
    }
}

/// The limit of `d` as the equalizer of `s, t : ∏_j D j ⇒ ∏_{f : a → b} D b`
/// with `s` having components `π_b` and `t` having components `D f ∘ π_a`,
/// over non-identity arrows `f` of `J`.
pub fn limit_from_products_equalizers(d: &FinFunctor) -> Result<LimitData> {
    let (j, c) = (d.source(), d.target());
    if (0..j.num_arrows()).any(|f| j.eq_class(f) != f || j.class_members(f).len() != 1) {
        return Err(Error::Precondition(
            "the shape must have singleton hom-setoid classes".into(),
        ));
    }
    let objs: Vec<usize> = (0..j.num_objects()).map(|x| d.obj(x)).collect();
    let p = NaryProduct::build(c, &objs, "the product over objects")?;
    let arrows: Vec<usize> = (0..j.num_arrows()).filter(|&f| !j.is_identity(f)).collect();
    let q_factors: Vec<usize> = arrows.iter().map(|&f| d.obj(j.target(f))).collect();
    let q = NaryProduct::build(c, &q_factors, "the product over arrows")?;
    let s_comps: Vec<usize> = arrows.iter().map(|&f| p.projections[j.target(f)]).collect();
    let t_comps: Vec<usize> = arrows
        .iter()
        .map(|&f| c.c(d.arr(f), p.projections[j.source(f)]))
        .collect();
    let s = q
        .tuple(c, p.object, &s_comps)
        .ok_or_else(|| Error::Internal("pairing for s not found".into()))?;
    let t = q
        .tuple(c, p.object, &t_comps)
        .ok_or_else(|| Error::Internal("pairing for t not found".into()))?;
    let e = find_equalizer(c, s, t)?.ok_or_else(|| {
        Error::StructureAbsent(format!(
            "equalizer of the parallel pair {} ⇒ {}",
            c.object_name(p.object),
            c.object_name(q.object)
        ))
    })?;
    let legs = p
        .projections
        .iter()
        .map(|&pi| c.c(pi, e.inclusion))
        .collect();
    let cone = ConeData {
        diagram: d.clone(),
        apex: e.object,
        legs,
    };
    LimitData::new(cone).map_err(|err| Error::Internal(format!("constructed cone: {err}")))
}

/// Restricts a limit of `L : J → C` along the left adjoint `F : J' → J` of
/// an adjoint equivalence, giving a limit of `L ∘ F` with the same apex.
pub fn transport_limit(e: &Adjunction, l: &FinFunctor, lim: &LimitData) -> Result<LimitData> {
    if !is_adjoint_equivalence(e) {
        return Err(Error::NotAdjointEquivalence(
            "unit or counit is not a natural isomorphism".into(),
        ));
    }
    let report = check_adjunction(e);
    if !report.passed {
        return Err(Error::Laws(report));
    }
    if lim.diagram() != l {
        return Err(Error::Mismatch("limit is for a different diagram".into()));
    }
    let f = e.left();
    if !same_category(f.target(), l.source()) {
        return Err(Error::Mismatch(
            "equivalence does not land in the diagram shape".into(),
        ));
    }
    let lf = compose_functor(l, f)?;
    let legs = (0..f.source().num_objects())
        .map(|x| lim.legs()[f.obj(x)])
        .collect();
    let cone = ConeData {
        diagram: lf,
        apex: lim.apex(),
        legs,
    };
    LimitData::new(cone).map_err(|err| Error::Internal(format!("transported cone: {err}")))
}

/// Objects `0..n`, hom-sets `0..|a, b|`, laws up to index equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinDiagramShape {
    pub n: usize,
    /// `|a, b|` at `a * n + b`.
    pub hom_size: Vec<usize>,
    /// At `(a * n + b) * n + c`, entry `j * |a, b| + i` is the index in
    /// `|a, c|` of `g_j ∘ f_i` for `f_i : a → b`, `g_j : b → c`.
    pub comp: Vec<Vec<usize>>,
    /// Index of the identity in `|a, a|`.
    pub identity: Vec<usize>,
}

impl FinDiagramShape {
    pub fn size(&self, a: usize, b: usize) -> usize {
        self.hom_size[a * self.n + b]
    }

    pub fn compose(&self, a: usize, b: usize, c: usize, g: usize, f: usize) -> usize {
        self.comp[(a * self.n + b) * self.n + c][g * self.size(a, b) + f]
    }

    pub fn discrete(n: usize) -> Self {
        let hom_size = (0..n * n).map(|k| usize::from(k / n == k % n)).collect();
        let mut s = FinDiagramShape {
            n,
            hom_size,
            comp: vec![],
            identity: vec![0; n],
        };
        s.comp = s
            .table_shapes()
            .into_iter()
            .map(|len| vec![0; len])
            .collect();
        s
    }

    fn table_shapes(&self) -> Vec<usize> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push(self.size(a, b) * self.size(b, c));
                }
            }
        }
        out
    }

    /// Reads a category with singleton classes as a shape; arrows of each
    /// hom-set keep their index order.
    pub fn from_category(c: &FinCategory) -> Result<Self> {
        if (0..c.num_arrows()).any(|f| c.class_members(f).len() != 1) {
            return Err(Error::Precondition(
                "shapes need singleton hom-setoid classes".into(),
            ));
        }
        let n = c.num_objects();
        let hom_size = (0..n * n).map(|k| c.hom(k / n, k % n).len()).collect();
        let pos = |f: usize| {
            c.hom(c.source(f), c.target(f))
                .iter()
                .position(|&h| h == f)
                .unwrap()
        };
        let mut comp = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for x in 0..n {
                    let mut table = Vec::new();
                    for &g in c.hom(b, x) {
                        for &f in c.hom(a, b) {
                            let h = c.compose(g, f)?;
                            table.push(pos(h));
                        }
                    }
                    comp.push(table);
                }
            }
        }
        let identity = (0..n).map(|x| pos(c.identity(x))).collect();
        Ok(FinDiagramShape {
            n,
            hom_size,
            comp,
            identity,
        })
    }

    /// Global arrow index of the `i`th arrow `a → b` in [`Self::to_category`].
    pub fn arrow_index(&self, a: usize, b: usize, i: usize) -> usize {
        self.hom_size[..a * self.n + b].iter().sum::<usize>() + i
    }

    /// The shape as a category: objects `"0"`, …, arrows ordered by
    /// `(source, target, index)`.
    pub fn to_category(&self) -> Result<FinCategory> {
        let report = check_fin_diagram(self);
        if !report.passed {
            return Err(Error::Laws(report));
        }
        let n = self.n;
        let mut arrows = Vec::new();
        let mut coords = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for i in 0..self.size(a, b) {
                    let label = if a == b && i == self.identity[a] {
                        format!("id_{a}")
                    } else {
                        format!("f{a}_{b}_{i}")
                    };
                    arrows.push(crate::category::Arrow::new(a, b, label));
                    coords.push((a, b, i));
                }
            }
        }
        let identities = (0..n)
            .map(|a| self.arrow_index(a, a, self.identity[a]))
            .collect();
        let eq = (0..arrows.len()).collect();
        FinCategory::from_fn(
            (0..n).map(|a| a.to_string()).collect(),
            arrows,
            eq,
            identities,
            |g, f| {
                let (a, b, i) = coords[f];
                let (_, c, j) = coords[g];
                Some(self.arrow_index(a, c, self.compose(a, b, c, j, i)))
            },
        )
    }
}

/// Shapes of the tables, identities and composition laws, all with index
/// equality.
pub fn check_fin_diagram(s: &FinDiagramShape) -> LawReport {
    let mut report = LawReport::new();
    let n = s.n;
    if s.hom_size.len() != n * n || s.identity.len() != n {
        report.push("fin-shape", vec![], "size tables have the wrong length");
        return report;
    }
    let shapes = s.table_shapes();
    if s.comp.len() != shapes.len() || s.comp.iter().zip(&shapes).any(|(t, &len)| t.len() != len) {
        report.push(
            "fin-shape",
            vec![],
            "composition tables have the wrong shape",
        );
        return report;
    }
    for a in 0..n {
        if s.identity[a] >= s.size(a, a) {
            report.push(
                "fin-shape",
                vec![a],
                format!("identity of {a} is out of range"),
            );
            return report;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bound = s.size(a, c);
                let k = (a * n + b) * n + c;
                if let Some(i) = s.comp[k].iter().position(|&h| h >= bound) {
                    report.push(
                        "fin-shape",
                        vec![a, b, c, i],
                        format!("composite {a}→{b}→{c} entry {i} is out of range"),
                    );
                    return report;
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for f in 0..s.size(a, b) {
                if s.compose(a, b, b, s.identity[b], f) != f {
                    report.push(
                        "identity-left",
                        vec![a, b, f],
                        format!("id ∘ f{a}_{b}_{f} ≠ f"),
                    );
                }
                if s.compose(a, a, b, f, s.identity[a]) != f {
                    report.push(
                        "identity-right",
                        vec![a, b, f],
                        format!("f{a}_{b}_{f} ∘ id ≠ f"),
                    );
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for f in 0..s.size(a, b) {
                        for g in 0..s.size(b, c) {
                            for h in 0..s.size(c, d) {
                                let left = s.compose(a, c, d, h, s.compose(a, b, c, g, f));
                                let right = s.compose(a, b, d, s.compose(b, c, d, h, g), f);
                                if left != right {
                                    report.push(
                                        "assoc",
                                        vec![a, b, c, d, f, g, h],
                                        format!("(h g) f ≠ h (g f) on {a}→{b}→{c}→{d}"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// A finite diagram shape together with an adjoint equivalence from `C`
/// to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteWitness {
    pub shape: FinDiagramShape,
    pub adjunction: Adjunction,
}

impl FiniteWitness {
    /// The witness of a category with singleton classes: its own shape,
    /// with the relabelling isomorphism both ways.
    pub fn canonical(c: &Cat) -> Result<Self> {
        let shape = FinDiagramShape::from_category(c)?;
        let sc: Cat = Arc::new(shape.to_category()?);
        let fwd = (0..c.num_arrows())
            .map(|f| {
                let (a, b) = (c.source(f), c.target(f));
                shape.arrow_index(a, b, c.hom(a, b).iter().position(|&h| h == f).unwrap())
            })
            .collect::<Vec<_>>();
        let mut back = vec![0; fwd.len()];
        for (f, &g) in fwd.iter().enumerate() {
            back[g] = f;
        }
        let objs: Vec<usize> = (0..c.num_objects()).collect();
        let f = FinFunctor::new(c.clone(), sc.clone(), objs.clone(), fwd)?;
        let g = FinFunctor::new(sc, c.clone(), objs, back)?;
        Ok(FiniteWitness {
            shape,
            adjunction: Adjunction::with_least_components(f, g)?,
        })
    }
}

pub fn check_finite_witness(c: &FinCategory, w: &FiniteWitness) -> LawReport {
    let mut report = LawReport::new();
    report.absorb("shape", check_fin_diagram(&w.shape));
    if !report.passed {
        return report;
    }
    let a = &w.adjunction;
    if **a.domain() != *c {
        report.push(
            "endpoint",
            vec![],
            "adjunction does not start at the category",
        );
    }
    match w.shape.to_category() {
        Ok(s) if **a.codomain() == s => {}
        _ => report.push("endpoint", vec![], "adjunction does not land in the shape"),
    }
    report.absorb("adjunction", check_adjunction(a));
    if is_natural_iso(a.unit()).is_none() {
        report.push(
            "equivalence-unit",
            vec![],
            "unit is not a natural isomorphism",
        );
    }
    if is_natural_iso(a.counit()).is_none() {
        report.push(
            "equivalence-counit",
            vec![],
            "counit is not a natural isomorphism",
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{standard_category, thicken, StandardKind};

    fn cat(k: StandardKind) -> Cat {
        Arc::new(standard_category(&k).unwrap())
    }

    #[test]
    fn terminal_and_initial_objects() {
        let one = standard_category(&StandardKind::One).unwrap();
        assert_eq!(find_terminal(&one).unwrap().object, 0);
        assert_eq!(find_initial(&one).unwrap().object, 0);
        let c3 = standard_category(&StandardKind::Chain(3)).unwrap();
        let t = find_terminal(&c3).unwrap();
        assert_eq!(t.object, 2);
        assert!(is_universal_object(&c3, &t));
        assert_eq!(find_initial(&c3).unwrap().object, 0);
        let pp = standard_category(&StandardKind::ParallelPair).unwrap();
        assert!(find_initial(&pp).is_none());
        assert!(find_terminal(&pp).is_none());
    }

    #[test]
    fn duality_round_trips() {
        let c3 = standard_category(&StandardKind::Chain(3)).unwrap();
        let t = find_terminal(&c3).unwrap();
        assert_eq!(initial_to_terminal_op(&terminal_to_initial_op(&t)), t);
        let i = find_initial(&c3.op()).unwrap();
        assert_eq!(i.object, t.object);
        assert!(is_universal_object(&c3.op(), &i));
    }

    #[test]
    fn products() {
        let c4 = standard_category(&StandardKind::Chain(4)).unwrap();
        assert_eq!(find_product(&c4, 1, 3).unwrap().object, 1);
        let p = find_product(&c4, 2, 3).unwrap();
        assert_eq!(p.object, 2);
        assert!(check_product(&c4, 2, 3, p.proj1, p.proj2));
        assert_eq!(
            p.pairing(&c4, c4.hom(0, 2)[0], c4.hom(0, 3)[0]),
            Some(c4.hom(0, 2)[0])
        );
        let pp = standard_category(&StandardKind::ParallelPair).unwrap();
        assert!(find_product(&pp, 0, 1).is_none());
        let d = standard_category(&StandardKind::Divisors(12)).unwrap();
        let (four, six) = (d.object_index("4").unwrap(), d.object_index("6").unwrap());
        assert_eq!(
            d.object_name(find_product(&d, four, six).unwrap().object),
            "2"
        );
        assert_eq!(
            d.object_name(find_coproduct(&d, four, six).unwrap().object),
            "12"
        );
    }

    #[test]
    fn equalizers() {
        let z = standard_category(&StandardKind::WalkingArrow).unwrap();
        let u = z.arrow_index("u").unwrap();
        let e = find_equalizer(&z, u, u).unwrap().unwrap();
        assert_eq!((e.object, e.inclusion), (0, z.identity(0)));
        let pp = standard_category(&StandardKind::ParallelPair).unwrap();
        let (s, t) = (pp.arrow_index("s").unwrap(), pp.arrow_index("t").unwrap());
        assert!(find_equalizer(&pp, s, t).unwrap().is_none());
        assert!(find_coequalizer(&pp, s, t).unwrap().is_none());
        assert!(matches!(
            find_equalizer(&pp, s, pp.identity(0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pullbacks_agree_with_direct_scan() {
        for k in [
            StandardKind::Chain(3),
            StandardKind::Divisors(12),
            StandardKind::Cospan,
        ] {
            let c = standard_category(&k).unwrap();
            for f in 0..c.num_arrows() {
                for g in 0..c.num_arrows() {
                    if c.target(f) != c.target(g) {
                        continue;
                    }
                    let slice = find_pullback(&c, f, g).unwrap();
                    let direct = find_pullback_direct(&c, f, g).unwrap();
                    assert_eq!(slice.is_some(), direct.is_some());
                }
            }
        }
        let c = standard_category(&StandardKind::Chain(2)).unwrap();
        let pb = find_pullback(&c, c.identity(1), c.identity(1))
            .unwrap()
            .unwrap();
        assert_eq!(pb.object, 1);
    }

    fn diagram(j: &Cat, c: &Cat, objs: Vec<usize>) -> FinFunctor {
        FinFunctor::from_object_map(j, c, objs).unwrap()
    }

    #[test]
    fn constructive_and_brute_force_limits_agree() {
        let c4 = cat(StandardKind::Chain(4));
        let sq = cat(StandardKind::CommutativeSquare);
        let d = diagram(&sq, &c4, vec![0, 2, 1, 3]);
        let built = limit_from_products_equalizers(&d).unwrap();
        let brute = brute_force_limit(&d).unwrap();
        assert_eq!(built.apex(), 0);
        assert!(compare_limits(&built, &brute).is_some());

        let empty: Cat = Arc::new(FinCategory::empty());
        let d = FinFunctor::new(empty, c4.clone(), vec![], vec![]).unwrap();
        assert_eq!(limit_from_products_equalizers(&d).unwrap().apex(), 3);
        assert_eq!(brute_force_limit(&d).unwrap().apex(), 3);
    }

    #[test]
    fn thick_limits_compare_up_to_equivalence() {
        let t: Cat =
            Arc::new(thicken(&standard_category(&StandardKind::Chain(3)).unwrap()).unwrap());
        let cs = cat(StandardKind::Cospan);
        let d = diagram(&cs, &t, vec![1, 2, 2]);
        let built = limit_from_products_equalizers(&d).unwrap();
        let brute = brute_force_limit(&d).unwrap();
        assert_eq!(built.apex(), 1);
        assert!(compare_limits(&built, &brute).is_some());
    }

    #[test]
    fn missing_structure_is_named() {
        let pp = cat(StandardKind::ParallelPair);
        let d2 = cat(StandardKind::Discrete(2));
        let d = diagram(&d2, &pp, vec![0, 1]);
        match limit_from_products_equalizers(&d) {
            Err(Error::StructureAbsent(what)) => assert!(what.contains("product")),
            other => panic!("{other:?}"),
        }
        assert!(brute_force_limit(&d).is_none());
    }

    #[test]
    fn transport_along_identity_is_identity() {
        let c4 = cat(StandardKind::Chain(4));
        let cs = cat(StandardKind::Cospan);
        let d = diagram(&cs, &c4, vec![1, 2, 3]);
        let lim = brute_force_limit(&d).unwrap();
        let moved = transport_limit(&Adjunction::identity(&cs), &d, &lim).unwrap();
        assert_eq!(moved, lim);
        let doubling = Adjunction::from_object_maps(
            &cat(StandardKind::Chain(2)),
            &cat(StandardKind::Chain(4)),
            vec![0, 2],
            vec![0, 0, 1, 1],
        )
        .unwrap();
        let d = diagram(&cat(StandardKind::Chain(4)), &c4, vec![0, 1, 2, 3]);
        let lim = brute_force_limit(&d).unwrap();
        assert!(matches!(
            transport_limit(&doubling, &d, &lim),
            Err(Error::NotAdjointEquivalence(_))
        ));
    }

    #[test]
    fn fin_diagram_shapes() {
        assert!(check_fin_diagram(&FinDiagramShape::discrete(3)).passed);
        let pp = standard_category(&StandardKind::ParallelPair).unwrap();
        let s = FinDiagramShape::from_category(&pp).unwrap();
        assert_eq!(s.size(0, 1), 2);
        assert!(check_fin_diagram(&s).passed);
        let c3 = standard_category(&StandardKind::Chain(3)).unwrap();
        let mut s = FinDiagramShape::from_category(&c3).unwrap();
        assert!(check_fin_diagram(&s).passed);
        assert!(find_isomorphism_ok(&s.to_category().unwrap(), &c3));
        s.comp[1][0] = 5;
        assert!(check_fin_diagram(&s).has_law("fin-shape"));
        let m = standard_category(&StandardKind::Monoid(vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ]))
        .unwrap();
        let mut s = FinDiagramShape::from_category(&m).unwrap();
        s.comp[0][1 * 3 + 1] = 1; // g ∘ g := g
        let r = check_fin_diagram(&s);
        assert!(!r.passed && r.has_law("assoc"));
    }

    fn find_isomorphism_ok(a: &FinCategory, b: &FinCategory) -> bool {
        crate::category::find_isomorphism(a, b).is_some()
    }

    #[test]
    fn finite_witnesses() {
        let one = cat(StandardKind::One);
        let w = FiniteWitness::canonical(&one).unwrap();
        assert!(check_finite_witness(&one, &w).passed);

        let ip = cat(StandardKind::IsoPair);
        let shape = FinDiagramShape::discrete(1);
        let sc: Cat = Arc::new(shape.to_category().unwrap());
        let adj = Adjunction::with_least_components(
            FinFunctor::constant(&ip, &sc, 0).unwrap(),
            FinFunctor::constant(&sc, &ip, 0).unwrap(),
        )
        .unwrap();
        let w = FiniteWitness {
            shape,
            adjunction: adj,
        };
        assert!(check_finite_witness(&ip, &w).passed);

        // idempotent monoid: the identity witness with unit and counit p
        let m: Cat = Arc::new(
            standard_category(&StandardKind::Monoid(vec![vec![0, 1], vec![1, 1]])).unwrap(),
        );
        let w = FiniteWitness::canonical(&m).unwrap();
        assert!(check_finite_witness(&m, &w).passed);
        let p = w.shape.arrow_index(0, 0, 1);
        let pm = m.arrow_index("g").unwrap();
        let bad = FiniteWitness {
            shape: w.shape.clone(),
            adjunction: w.adjunction.with_components(vec![pm], vec![p]).unwrap(),
        };
        let r = check_finite_witness(&m, &bad);
        assert!(r.has_law("equivalence-counit") && r.has_law("zig"));
    }
}
