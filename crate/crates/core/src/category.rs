//! Finite categories whose hom-sets carry an equivalence relation.
//!
//! Arrows are stored by index. Equality of morphisms is `≈`, a partition of
//! each hom-set recorded as a class index per arrow; distinct arrows may be
//! `≈` without being the same arrow, and nothing here collapses them.
//! Class indices are canonical: the class of `f` is named by the least arrow
//! index it contains, so `eq_class(f)` doubles as the class representative.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::LawReport;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

impl Arrow {
    pub fn new(source: usize, target: usize, label: impl Into<String>) -> Self {
        Arrow {
            source,
            target,
            label: label.into(),
        }
    }
}

/// A finite category with proof-relevant hom-setoids.
///
/// Two values are equal exactly when all of objects, arrows, classes,
/// composition table and identities agree, in the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    eq_class: Vec<usize>,
    /// Dense table indexed `g * arrows.len() + f`, holding `g ∘ f`.
    comp: Vec<Option<usize>>,
    identities: Vec<usize>,
    homs: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Assembles a category from raw tables.
    ///
    /// `eq_class` may use any labelling of the partition; equal values mean
    /// equal classes. Only index ranges and table shapes are checked here;
    /// typing and the category laws are the business of
    /// [`FinCategory::check_laws`].
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        eq_class: Vec<usize>,
        comp: Vec<Option<usize>>,
        identities: Vec<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = arrows.len();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Structure(format!(
                    "arrow {i} ({}) has an endpoint outside {n} objects",
                    a.label
                )));
            }
        }
        if eq_class.len() != m {
            return Err(Error::Structure(format!(
                "class map has {} entries for {m} arrows",
                eq_class.len()
            )));
        }
        if comp.len() != m * m {
            return Err(Error::Structure(format!(
                "composition table has {} entries, expected {}",
                comp.len(),
                m * m
            )));
        }
        if let Some(bad) = comp.iter().flatten().find(|&&h| h >= m) {
            return Err(Error::Structure(format!("composite {bad} is not an arrow")));
        }
        if identities.len() != n {
            return Err(Error::Structure(format!(
                "{} identities declared for {n} objects",
                identities.len()
            )));
        }
        if let Some(bad) = identities.iter().find(|&&i| i >= m) {
            return Err(Error::Structure(format!("identity {bad} is not an arrow")));
        }

        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        let eq_class = eq_class
            .iter()
            .enumerate()
            .map(|(i, c)| *first.entry(*c).or_insert(i))
            .collect();

        let mut homs = vec![Vec::new(); n * n];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.source * n + a.target].push(i);
        }
        Ok(FinCategory {
            objects,
            arrows,
            eq_class,
            comp,
            identities,
            homs,
        })
    }

    /// Like [`FinCategory::from_parts`], filling the composition table from
    /// `compose(g, f)` on the composable pairs only.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        eq_class: Vec<usize>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let m = arrows.len();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if arrows[f].target == arrows[g].source {
                    comp[g * m + f] = compose(g, f);
                }
            }
        }
        Self::from_parts(objects, arrows, eq_class, comp, identities)
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        Self::from_parts(vec![], vec![], vec![], vec![], vec![]).expect("empty category")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, f: usize) -> &Arrow {
        &self.arrows[f]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].target
    }

    pub fn label(&self, f: usize) -> &str {
        &self.arrows[f].label
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    /// Canonical class of `f`: the least arrow index `≈` to it.
    pub fn eq_class(&self, f: usize) -> usize {
        self.eq_class[f]
    }

    pub fn eq_classes(&self) -> &[usize] {
        &self.eq_class
    }

    pub fn comp_table(&self) -> &[Option<usize>] {
        &self.comp
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.source(f)] == f
    }

    /// All arrows `a → b`, in index order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Class representatives of `Hom(a, b)`, in index order.
    pub fn hom_classes(&self, a: usize, b: usize) -> Vec<usize> {
        self.hom(a, b)
            .iter()
            .copied()
            .filter(|&f| self.eq_class[f] == f)
            .collect()
    }

    /// Arrows of the class of `f`.
    pub fn class_members(&self, f: usize) -> Vec<usize> {
        let c = self.eq_class[f];
        self.hom(self.source(f), self.target(f))
            .iter()
            .copied()
            .filter(|&g| self.eq_class[g] == c)
            .collect()
    }

    pub fn num_classes(&self) -> usize {
        (0..self.arrows.len())
            .filter(|&f| self.eq_class[f] == f)
            .count()
    }

    pub fn is_parallel(&self, f: usize, g: usize) -> bool {
        self.source(f) == self.source(g) && self.target(f) == self.target(g)
    }

    /// `f ≈ g`. Never relates non-parallel arrows.
    pub fn equiv(&self, f: usize, g: usize) -> bool {
        self.is_parallel(f, g) && self.eq_class[f] == self.eq_class[g]
    }

    /// Raw table entry for `g ∘ f`, without any typing check.
    pub fn composite(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.arrows.len() + f]
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> Result<usize> {
        if self.target(f) != self.source(g) {
            return Err(Error::NotComposable { g, f });
        }
        self.composite(g, f)
            .ok_or_else(|| Error::Structure(format!("no composite recorded for {g} ∘ {f}")))
    }

    /// `g ∘ f` for arrows known to be composable in a law-abiding category.
    pub fn c(&self, g: usize, f: usize) -> usize {
        match self.compose(g, f) {
            Ok(h) => h,
            Err(e) => panic!("{e}"),
        }
    }

    /// Composite of a path given in application order (`path[0]` first).
    pub fn compose_path(&self, path: &[usize]) -> Result<usize> {
        let (&first, rest) = path
            .split_first()
            .ok_or_else(|| Error::Structure("empty path".into()))?;
        rest.iter().try_fold(first, |acc, &g| self.compose(g, acc))
    }

    /// Checks typing, identity, associativity and `∘-resp-≈` at every instance.
    pub fn check_laws(&self) -> LawReport {
        let mut report = LawReport::new();
        let m = self.arrows.len();

        for (x, &i) in self.identities.iter().enumerate() {
            if self.source(i) != x || self.target(i) != x {
                report.push(
                    "identity-typing",
                    vec![x, i],
                    format!("identity of {} is not an endo-arrow on it", self.objects[x]),
                );
            }
        }
        for f in 0..m {
            let r = self.eq_class[f];
            if !self.is_parallel(f, r) {
                report.push(
                    "equiv-typing",
                    vec![f, r],
                    format!(
                        "{} is related to non-parallel {}",
                        self.label(f),
                        self.label(r)
                    ),
                );
            }
        }

        for g in 0..m {
            for f in 0..m {
                let composable = self.target(f) == self.source(g);
                match (composable, self.composite(g, f)) {
                    (true, None) => report.push(
                        "totality",
                        vec![g, f],
                        format!("missing composite {}.{}", self.label(g), self.label(f)),
                    ),
                    (true, Some(h)) => {
                        if self.source(h) != self.source(f) || self.target(h) != self.target(g) {
                            report.push(
                                "comp-typing",
                                vec![g, f, h],
                                format!(
                                    "{}.{} = {} has the wrong endpoints",
                                    self.label(g),
                                    self.label(f),
                                    self.label(h)
                                ),
                            );
                        }
                    }
                    (false, Some(h)) => report.push(
                        "comp-domain",
                        vec![g, f, h],
                        format!(
                            "composite recorded for non-composable {}.{}",
                            self.label(g),
                            self.label(f)
                        ),
                    ),
                    (false, None) => {}
                }
            }
        }

        // Only well-typed composites take part in the equational laws; the
        // rest are already reported above.
        let typed = |g: usize, f: usize| -> Option<usize> {
            if self.target(f) != self.source(g) {
                return None;
            }
            self.composite(g, f)
                .filter(|&h| self.source(h) == self.source(f) && self.target(h) == self.target(g))
        };

        for f in 0..m {
            let (a, b) = (self.source(f), self.target(f));
            let (ida, idb) = (self.identities[a], self.identities[b]);
            if let Some(h) = typed(idb, f) {
                if !self.equiv(h, f) {
                    report.push(
                        "identity-left",
                        vec![f],
                        format!(
                            "id.{} is {}, not ≈ {}",
                            self.label(f),
                            self.label(h),
                            self.label(f)
                        ),
                    );
                }
            }
            if let Some(h) = typed(f, ida) {
                if !self.equiv(h, f) {
                    report.push(
                        "identity-right",
                        vec![f],
                        format!(
                            "{}.id is {}, not ≈ {}",
                            self.label(f),
                            self.label(h),
                            self.label(f)
                        ),
                    );
                }
            }
        }
        for (x, &i) in self.identities.iter().enumerate() {
            if let Some(h) = typed(i, i) {
                if !self.equiv(h, i) {
                    report.push(
                        "identity-squared",
                        vec![x],
                        format!("id.id at {} is {}", self.objects[x], self.label(h)),
                    );
                }
            }
        }

        let n = self.objects.len();
        let mut outgoing = vec![Vec::new(); n];
        for (i, a) in self.arrows.iter().enumerate() {
            outgoing[a.source].push(i);
        }
        for f in 0..m {
            for &g in &outgoing[self.target(f)] {
                let Some(gf) = typed(g, f) else { continue };
                for &h in &outgoing[self.target(g)] {
                    let (Some(hg), Some(h_gf)) = (typed(h, g), typed(h, gf)) else {
                        continue;
                    };
                    let Some(hg_f) = typed(hg, f) else { continue };
                    if !self.equiv(hg_f, h_gf) {
                        report.push(
                            "assoc",
                            vec![h, g, f],
                            format!(
                                "({}.{}).{} = {} but {}.({}.{}) = {}",
                                self.label(h),
                                self.label(g),
                                self.label(f),
                                self.label(hg_f),
                                self.label(h),
                                self.label(g),
                                self.label(f),
                                self.label(h_gf)
                            ),
                        );
                    }
                }
            }
        }

        for f in 0..m {
            for &g in &outgoing[self.target(f)] {
                let (rg, rf) = (self.eq_class[g], self.eq_class[f]);
                if !self.is_parallel(g, rg) || !self.is_parallel(f, rf) {
                    continue;
                }
                if let (Some(h), Some(r)) = (typed(g, f), typed(rg, rf)) {
                    if !self.equiv(h, r) {
                        report.push(
                            "comp-resp-equiv",
                            vec![g, f],
                            format!(
                                "{}.{} = {} is not ≈ the composite of the class representatives, {}",
                                self.label(g),
                                self.label(f),
                                self.label(h),
                                self.label(r)
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    /// The opposite category. Applying it twice gives back `self` exactly.
    pub fn op(&self) -> FinCategory {
        let m = self.arrows.len();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.target, a.source, a.label.clone()))
            .collect::<Vec<_>>();
        let mut comp = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[g * m + f] = self.comp[f * m + g];
            }
        }
        FinCategory::from_parts(
            self.objects.clone(),
            arrows,
            self.eq_class.clone(),
            comp,
            self.identities.clone(),
        )
        .expect("op preserves structure")
    }

    /// Replaces one composition table entry. For building mutants.
    pub fn with_composite(&self, g: usize, f: usize, h: Option<usize>) -> Result<FinCategory> {
        let m = self.arrows.len();
        if g >= m || f >= m {
            return Err(Error::Structure(format!(
                "({g}, {f}) is not a pair of arrows"
            )));
        }
        let mut comp = self.comp.clone();
        comp[g * m + f] = h;
        FinCategory::from_parts(
            self.objects.clone(),
            self.arrows.clone(),
            self.eq_class.clone(),
            comp,
            self.identities.clone(),
        )
    }

    /// Replaces the class map. For building mutants.
    pub fn with_eq_classes(&self, eq_class: Vec<usize>) -> Result<FinCategory> {
        FinCategory::from_parts(
            self.objects.clone(),
            self.arrows.clone(),
            eq_class,
            self.comp.clone(),
            self.identities.clone(),
        )
    }

    /// Replaces the identity designated for `x`. For building mutants.
    pub fn with_identity(&self, x: usize, f: usize) -> Result<FinCategory> {
        if x >= self.objects.len() {
            return Err(Error::Structure(format!("object {x} out of range")));
        }
        let mut ids = self.identities.clone();
        ids[x] = f;
        FinCategory::from_parts(
            self.objects.clone(),
            self.arrows.clone(),
            self.eq_class.clone(),
            self.comp.clone(),
            ids,
        )
    }

    /// Same data with new display names.
    pub fn relabelled(&self, objects: Vec<String>, labels: Vec<String>) -> Result<FinCategory> {
        if objects.len() != self.objects.len() || labels.len() != self.arrows.len() {
            return Err(Error::Structure("relabelling changes the sizes".into()));
        }
        let arrows = self
            .arrows
            .iter()
            .zip(labels)
            .map(|(a, l)| Arrow::new(a.source, a.target, l))
            .collect();
        FinCategory::from_parts(
            objects,
            arrows,
            self.eq_class.clone(),
            self.comp.clone(),
            self.identities.clone(),
        )
    }
}

pub fn check_category_laws(c: &FinCategory) -> LawReport {
    c.check_laws()
}

pub fn equiv(c: &FinCategory, f: usize, g: usize) -> bool {
    c.equiv(f, g)
}

pub fn compose(c: &FinCategory, g: usize, f: usize) -> Result<usize> {
    c.compose(g, f)
}

pub fn op(c: &FinCategory) -> FinCategory {
    c.op()
}

/// Product category; objects and arrows are pairs in lexicographic order.
pub fn product_category(c: &FinCategory, d: &FinCategory) -> FinCategory {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let (mc, md) = (c.num_arrows(), d.num_arrows());
    let mut objects = Vec::with_capacity(nc * nd);
    for x in c.objects() {
        for y in d.objects() {
            objects.push(format!("({x},{y})"));
        }
    }
    let mut arrows = Vec::with_capacity(mc * md);
    let mut eq = Vec::with_capacity(mc * md);
    for (f, af) in c.arrows().iter().enumerate() {
        for (g, ag) in d.arrows().iter().enumerate() {
            arrows.push(Arrow::new(
                af.source * nd + ag.source,
                af.target * nd + ag.target,
                format!("({},{})", af.label, ag.label),
            ));
            eq.push(c.eq_class(f) * md + d.eq_class(g));
        }
    }
    let identities = (0..nc)
        .flat_map(|x| (0..nd).map(move |y| (x, y)))
        .map(|(x, y)| c.identity(x) * md + d.identity(y))
        .collect();
    FinCategory::from_fn(objects, arrows, eq, identities, |p, q| {
        let h1 = c.composite(p / md, q / md)?;
        let h2 = d.composite(p % md, q % md)?;
        Some(h1 * md + h2)
    })
    .expect("product preserves structure")
}

/// An object of a slice category: `arrow : over → x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceObject {
    pub over: usize,
    pub arrow: usize,
}

/// A slice category together with the data needed to read it back in terms
/// of the base category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub category: FinCategory,
    pub base_object: usize,
    pub objects: Vec<SliceObject>,
    /// Underlying base arrow of each slice arrow.
    pub underlying: Vec<usize>,
}

impl Slice {
    pub fn object_of(&self, arrow: usize) -> Option<usize> {
        self.objects.iter().position(|o| o.arrow == arrow)
    }
}

/// The slice `C/x`, one object per `≈`-class of arrows into `x` (the least
/// arrow index of the class stands for it).
pub fn slice_category(c: &FinCategory, x: usize) -> Slice {
    let objects: Vec<SliceObject> = (0..c.num_arrows())
        .filter(|&f| c.target(f) == x && c.eq_class(f) == f)
        .map(|f| SliceObject {
            over: c.source(f),
            arrow: f,
        })
        .collect();

    // Arrow (h, target slice object); the source slice object is the class of g.h.
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    let mut key: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for h in 0..c.num_arrows() {
        for (t, to) in objects.iter().enumerate() {
            if to.over != c.target(h) {
                continue;
            }
            let Some(gh) = c.composite(to.arrow, h) else {
                continue;
            };
            let Some(s) = objects.iter().position(|so| so.arrow == c.eq_class(gh)) else {
                continue;
            };
            if objects[s].over != c.source(h) {
                continue;
            }
            key.insert((h, t), arrows.len());
            arrows.push(Arrow::new(s, t, c.label(h).to_string()));
            underlying.push(h);
        }
    }
    let eq = (0..arrows.len())
        .map(|i| {
            let h = underlying[i];
            (0..arrows.len())
                .find(|&j| {
                    arrows[j].source == arrows[i].source
                        && arrows[j].target == arrows[i].target
                        && c.equiv(underlying[j], h)
                })
                .unwrap_or(i)
        })
        .collect();
    let identities = objects
        .iter()
        .enumerate()
        .map(|(t, o)| key[&(c.identity(o.over), t)])
        .collect();
    let names = objects
        .iter()
        .map(|o| format!("{}/{}", c.object_name(o.over), c.label(o.arrow)))
        .collect();
    let category = FinCategory::from_fn(names, arrows.clone(), eq, identities, |k, h| {
        let kh = c.composite(underlying[k], underlying[h])?;
        key.get(&(kh, arrows[k].target)).copied()
    })
    .expect("slice preserves structure");
    Slice {
        category,
        base_object: x,
        objects,
        underlying,
    }
}

/// An isomorphism of categories up to `≈`: bijective on objects and arrows,
/// preserving endpoints, classes, identities and composites up to `≈`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub obj_map: Vec<usize>,
    pub arr_map: Vec<usize>,
}

/// Backtracking search for an isomorphism `c → d`.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory) -> Option<Isomorphism> {
    let n = c.num_objects();
    if n != d.num_objects() || c.num_arrows() != d.num_arrows() {
        return None;
    }
    let mut obj_map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_objects(c, d, 0, &mut obj_map, &mut used)
}

fn search_objects(
    c: &FinCategory,
    d: &FinCategory,
    x: usize,
    obj_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Isomorphism> {
    let n = c.num_objects();
    if x == n {
        let mut arr_map = vec![usize::MAX; c.num_arrows()];
        let mut arr_used = vec![false; d.num_arrows()];
        return search_arrows(c, d, 0, obj_map, &mut arr_map, &mut arr_used).map(|arr_map| {
            Isomorphism {
                obj_map: obj_map.clone(),
                arr_map,
            }
        });
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        obj_map[x] = y;
        let sizes_match = (0..=x).all(|z| {
            c.hom(x, z).len() == d.hom(y, obj_map[z]).len()
                && c.hom(z, x).len() == d.hom(obj_map[z], y).len()
                && c.hom_classes(x, z).len() == d.hom_classes(y, obj_map[z]).len()
                && c.hom_classes(z, x).len() == d.hom_classes(obj_map[z], y).len()
        });
        if sizes_match {
            used[y] = true;
            if let Some(iso) = search_objects(c, d, x + 1, obj_map, used) {
                return Some(iso);
            }
            used[y] = false;
        }
    }
    obj_map[x] = usize::MAX;
    None
}

fn search_arrows(
    c: &FinCategory,
    d: &FinCategory,
    f: usize,
    obj_map: &[usize],
    arr_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    let m = c.num_arrows();
    if f == m {
        return Some(arr_map.clone());
    }
    let (a, b) = (obj_map[c.source(f)], obj_map[c.target(f)]);
    for &g in d.hom(a, b) {
        if used[g] {
            continue;
        }
        arr_map[f] = g;
        if consistent_so_far(c, d, f, arr_map) {
            used[g] = true;
            if let Some(done) = search_arrows(c, d, f + 1, obj_map, arr_map, used) {
                return Some(done);
            }
            used[g] = false;
        }
    }
    arr_map[f] = usize::MAX;
    None
}

fn consistent_so_far(c: &FinCategory, d: &FinCategory, f: usize, arr_map: &[usize]) -> bool {
    let g = arr_map[f];
    if c.is_identity(f) != d.equiv(g, d.identity(d.source(g))) && c.is_identity(f) {
        return false;
    }
    for h in 0..=f {
        if c.is_parallel(h, f) && c.equiv(h, f) != d.equiv(arr_map[h], g) {
            return false;
        }
    }
    for p in 0..=f {
        for (x, y) in [(p, f), (f, p)] {
            if c.target(y) != c.source(x) {
                continue;
            }
            let Some(xy) = c.composite(x, y) else {
                continue;
            };
            if xy > f {
                continue;
            }
            match d.composite(arr_map[x], arr_map[y]) {
                Some(img) if d.equiv(img, arr_map[xy]) => {}
                _ => return false,
            }
        }
    }
    true
}
