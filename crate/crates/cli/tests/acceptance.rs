//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use fincat::adjoint::{
    adjunction_of_hom_iso, check_adjunction, check_mate_hom_square, check_mate_unit_counit,
    hom_iso_of_adjunction, is_adjoint_equivalence, monad_of_adjunction, Adjunction, MateSetup,
};
use fincat::catlang::{
    elaborate, elaborate_table, parse, print_category, print_document, saturate, ArrowDecl,
    CategoryBody, CategoryDecl, Document, DslError, Item, Name, PresentedBody, Relation,
    SaturationConfig, Word,
};
use fincat::fixtures::{standard_category, thicken};
use fincat::limits::{
    brute_force_limit, compare_limits, find_initial, find_terminal, initial_to_terminal_op,
    limit_from_products_equalizers, terminal_to_initial_op, transport_limit,
};
use fincat::monoidal::{
    check_closed_monoidal, check_monoidal, derive_associator_naturality, derive_tensor_hom_iso,
    monoidal_from_products, residuated_chain2, strict_commutative_closed, tensor_hom_iso,
    ClosedMonoidalStructure, Iso, MonoidalStructure,
};
use fincat::setoidcat::{
    inverse_image, inverse_image_map_transport, inverse_image_maps, inverse_image_transport,
    probe_family, slice_exponential, standard_presheaves, verify_lcc, yoneda_check, FinSetoid,
    SetoidMap,
};
use fincat::transfor::{
    enumerate_functors, functor_category, is_natural_iso, kleisli_category, op_functor, Cat,
    FinFunctor, Monad, NatTrans, DEFAULT_SEARCH_CAP,
};
use fincat::{FinCategory, StandardKind};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn std(k: StandardKind) -> FinCategory {
    standard_category(&k).unwrap()
}

fn cat(k: StandardKind) -> Cat {
    Arc::new(std(k))
}

fn idempotent() -> StandardKind {
    // {e, p} with p.p = p
    StandardKind::Monoid(vec![vec![0, 1], vec![1, 1]])
}

fn plain_fixtures() -> Vec<(String, FinCategory)> {
    use StandardKind::*;
    let mut kinds = vec![
        One,
        Discrete(3),
        WalkingArrow,
        ParallelPair,
        Cospan,
        Span,
        CommutativeSquare,
        Divisors(12),
        StandardKind::z2(),
        StandardKind::cyclic(3),
        idempotent(),
        IsoPair,
        TwoReps,
    ];
    kinds.extend((1..=5).map(Chain));
    let mut out: Vec<(String, FinCategory)> =
        kinds.into_iter().map(|k| (k.to_string(), std(k))).collect();
    out.push(("thicken(chain(3))".into(), thicken(&std(Chain(3))).unwrap()));
    out
}

fn galois_chain2_chain4() -> Adjunction {
    Adjunction::from_object_maps(
        &cat(StandardKind::Chain(2)),
        &cat(StandardKind::Chain(4)),
        vec![0, 2],
        vec![0, 0, 1, 1],
    )
    .unwrap()
}

fn fixtures() -> Vec<(String, FinCategory)> {
    let mut out = plain_fixtures();
    let (wa, z2) = (cat(StandardKind::WalkingArrow), cat(StandardKind::z2()));
    let (c2, c3) = (cat(StandardKind::Chain(2)), cat(StandardKind::Chain(3)));
    out.push((
        "[walking_arrow, z2]".into(),
        functor_category(&wa, &z2, DEFAULT_SEARCH_CAP)
            .unwrap()
            .category,
    ));
    out.push((
        "[chain(2), chain(3)]".into(),
        functor_category(&c2, &c3, DEFAULT_SEARCH_CAP)
            .unwrap()
            .category,
    ));
    out.push((
        "kleisli(id on z2)".into(),
        kleisli_category(&Monad::identity(&z2)).unwrap().category,
    ));
    let m = monad_of_adjunction(&galois_chain2_chain4()).unwrap();
    out.push((
        "kleisli(chain(2) closure)".into(),
        kleisli_category(&m).unwrap().category,
    ));
    out
}

// ---------------------------------------------------------------- 1

enum Expect {
    /// The named law must be reported at exactly these indices.
    At(&'static str, Vec<usize>),
    /// The reported violations of the law must be exactly this set.
    Exactly(&'static str, BTreeSet<Vec<usize>>),
}

/// Associativity failures of a one-object table, by direct lookup.
fn assoc_oracle(c: &FinCategory) -> BTreeSet<Vec<usize>> {
    let m = c.num_arrows();
    let mut out = BTreeSet::new();
    for h in 0..m {
        for g in 0..m {
            for f in 0..m {
                let t = c.comp_table();
                let hg_f = t[t[h * m + g].unwrap() * m + f].unwrap();
                let h_gf = t[h * m + t[g * m + f].unwrap()].unwrap();
                if hg_f != h_gf {
                    out.insert(vec![h, g, f]);
                }
            }
        }
    }
    out
}

fn mutants() -> Vec<(String, FinCategory, Expect)> {
    let mut out = Vec::new();
    for kind in [
        StandardKind::CommutativeSquare,
        StandardKind::Chain(4),
        StandardKind::cyclic(3),
        StandardKind::Divisors(12),
    ] {
        let c = std(kind.clone());
        let m = c.num_arrows();
        for g in 0..m {
            for f in 0..m {
                if c.is_identity(g) || c.is_identity(f) || c.composite(g, f).is_none() {
                    continue;
                }
                out.push((
                    format!("{kind} without {}.{}", c.label(g), c.label(f)),
                    c.with_composite(g, f, None).unwrap(),
                    Expect::At("totality", vec![g, f]),
                ));
            }
        }
    }

    let wa = std(StandardKind::WalkingArrow);
    let (a, u) = (wa.object_index("a").unwrap(), wa.arrow_index("u").unwrap());
    out.push((
        "walking_arrow with u.u = u".into(),
        wa.with_composite(u, u, Some(u)).unwrap(),
        Expect::At("comp-domain", vec![u, u, u]),
    ));
    out.push((
        "walking_arrow with id_a = u".into(),
        wa.with_identity(a, u).unwrap(),
        Expect::At("identity-typing", vec![a, u]),
    ));
    let mut eq = wa.eq_classes().to_vec();
    let id_a = wa.identity(a);
    eq[u] = id_a;
    out.push((
        "walking_arrow with u ~ id_a".into(),
        wa.with_eq_classes(eq).unwrap(),
        Expect::At("equiv-typing", vec![u, id_a]),
    ));

    let sq = std(StandardKind::CommutativeSquare);
    let (f, h) = (sq.arrow_index("f").unwrap(), sq.arrow_index("h").unwrap());
    out.push((
        "commutative_square with h.f = f".into(),
        sq.with_composite(h, f, Some(f)).unwrap(),
        Expect::At("comp-typing", vec![h, f, f]),
    ));

    let z = std(StandardKind::z2());
    let (e, g) = (z.arrow_index("e").unwrap(), z.arrow_index("g").unwrap());
    let moved = z.with_identity(0, g).unwrap();
    // f with g.f != f in the table
    let bad_left: BTreeSet<Vec<usize>> = (0..2)
        .filter(|&f| moved.c(g, f) != f)
        .map(|f| vec![f])
        .collect();
    out.push((
        "z2 with id = g".into(),
        moved,
        Expect::Exactly("identity-left", bad_left),
    ));
    out.push((
        "z2 with e.e = g".into(),
        z.with_composite(e, e, Some(g)).unwrap(),
        Expect::At("identity-squared", vec![0]),
    ));

    let tz = thicken(&z).unwrap();
    let g2 = tz.arrow_index("g'").unwrap();
    let g1 = tz.arrow_index("g").unwrap();
    out.push((
        "thicken(z2) with g'.g' = g".into(),
        tz.with_composite(g2, g2, Some(g1)).unwrap(),
        Expect::At("comp-resp-equiv", vec![g2, g2]),
    ));

    for n in [3usize, 4] {
        let c = std(StandardKind::cyclic(n));
        for x in 1..n {
            for y in 1..n {
                let wrong = (x + y + 1) % n;
                let mutant = c.with_composite(x, y, Some(wrong)).unwrap();
                if mutant.c(x, y) == c.c(x, y) {
                    continue;
                }
                let expected = assoc_oracle(&mutant);
                out.push((
                    format!(
                        "cyclic({n}) with {}.{} = {}",
                        c.label(x),
                        c.label(y),
                        c.label(wrong)
                    ),
                    mutant,
                    Expect::Exactly("assoc", expected),
                ));
            }
        }
    }
    out
}

fn criterion_1() -> Check {
    let fx = fixtures();
    ensure(fx.len() >= 12, || format!("only {} fixtures", fx.len()))?;
    for (name, c) in &fx {
        let r = c.check_laws();
        ensure(r.passed, || format!("{name} fails its laws:\n{r}"))?;
    }
    let ms = mutants();
    ensure(ms.len() >= 20, || format!("only {} mutants", ms.len()))?;
    for (name, c, expect) in &ms {
        let r = c.check_laws();
        ensure(!r.passed, || format!("mutant {name} passes"))?;
        match expect {
            Expect::At(law, idx) => {
                ensure(r.violations_of(law).any(|v| &v.indices == idx), || {
                    format!("mutant {name}: no {law} at {idx:?}\n{r}")
                })?
            }
            Expect::Exactly(law, set) => {
                let got: BTreeSet<Vec<usize>> =
                    r.violations_of(law).map(|v| v.indices.clone()).collect();
                ensure(!set.is_empty() && &got == set, || {
                    format!("mutant {name}: {law} at {got:?}, oracle says {set:?}")
                })?
            }
        }
    }
    println!(
        "    {} fixtures pass, {} mutants localized",
        fx.len(),
        ms.len()
    );
    Ok(())
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Check {
    let fx = fixtures();
    for (name, c) in &fx {
        ensure(&c.op().op() == c, || format!("op(op({name})) differs"))?;
        let op = c.op();
        if let Some(t) = find_terminal(c) {
            let i = terminal_to_initial_op(&t);
            ensure(Some(&i) == find_initial(&op).as_ref(), || {
                format!("{name}: terminal does not dualize")
            })?;
            ensure(initial_to_terminal_op(&i) == t, || {
                format!("{name}: terminal round trip")
            })?;
        }
        if let Some(i) = find_initial(c) {
            let t = initial_to_terminal_op(&i);
            ensure(Some(&t) == find_terminal(&op).as_ref(), || {
                format!("{name}: initial does not dualize")
            })?;
            ensure(terminal_to_initial_op(&t) == i, || {
                format!("{name}: initial round trip")
            })?;
        }
    }
    let small: Vec<Cat> = plain_fixtures()
        .into_iter()
        .filter(|(_, c)| c.num_arrows() <= 6)
        .map(|(_, c)| Arc::new(c))
        .collect();
    let mut functors = 0;
    for j in &small {
        for c in &small {
            for f in enumerate_functors(j, c, DEFAULT_SEARCH_CAP).map_err(|e| e.to_string())? {
                ensure(op_functor(&op_functor(&f)) == f, || {
                    "op_functor is not an involution".into()
                })?;
                functors += 1;
            }
            let (jo, co): (Cat, Cat) = (Arc::new(j.op()), Arc::new(c.op()));
            for x in 0..c.num_objects() {
                let k = FinFunctor::constant(j, c, x).map_err(|e| e.to_string())?;
                let ko = FinFunctor::constant(&jo, &co, x).map_err(|e| e.to_string())?;
                ensure(op_functor(&k) == ko, || {
                    "constant functor is not self-dual".into()
                })?;
            }
        }
    }
    println!("    {} categories, {functors} functors", fx.len());
    Ok(())
}

// ---------------------------------------------------------------- 3

fn galois_fixtures() -> Vec<(String, Cat, Cat, Vec<usize>, Vec<usize>)> {
    use StandardKind::*;
    let ds6 = [1usize, 2, 3, 6];
    let ds12 = [1usize, 2, 3, 4, 6, 12];
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    vec![
        (
            "x ↦ 2x ⊣ ⌊y/2⌋".into(),
            cat(Chain(2)),
            cat(Chain(4)),
            vec![0, 2],
            vec![0, 0, 1, 1],
        ),
        (
            "⌊x/2⌋ ⊣ y ↦ 2y + 1".into(),
            cat(Chain(4)),
            cat(Chain(2)),
            vec![0, 0, 1, 1],
            vec![1, 3],
        ),
        (
            "identity on chain(3)".into(),
            cat(Chain(3)),
            cat(Chain(3)),
            vec![0, 1, 2],
            vec![0, 1, 2],
        ),
        (
            "chain(3) ⇄ one, top".into(),
            cat(Chain(3)),
            cat(One),
            vec![0, 0, 0],
            vec![2],
        ),
        (
            "one ⇄ chain(3), bottom".into(),
            cat(One),
            cat(Chain(3)),
            vec![0],
            vec![0, 0, 0],
        ),
        (
            "divisors(6) ⊆ divisors(12) ⊣ gcd(-, 6)".into(),
            cat(Divisors(6)),
            cat(Divisors(12)),
            ds6.iter()
                .map(|d| ds12.iter().position(|e| e == d).unwrap())
                .collect(),
            ds12.iter()
                .map(|&y| ds6.iter().position(|&d| d == gcd(y, 6)).unwrap())
                .collect(),
        ),
    ]
}

fn criterion_3() -> Check {
    let fx = galois_fixtures();
    for (name, c, d, left, right) in &fx {
        let a = Adjunction::from_object_maps(c, d, left.clone(), right.clone())
            .map_err(|e| format!("{name}: {e}"))?;
        let r = check_adjunction(&a);
        ensure(r.passed, || format!("{name}:\n{r}"))?;
        let fam = hom_iso_of_adjunction(&a).map_err(|e| format!("{name}: {e}"))?;
        let back =
            adjunction_of_hom_iso(a.left(), a.right(), &fam).map_err(|e| format!("{name}: {e}"))?;
        for x in 0..c.num_objects() {
            ensure(
                c.equiv(back.unit().component(x), a.unit().component(x)),
                || format!("{name}: unit at {x}"),
            )?;
        }
        for y in 0..d.num_objects() {
            ensure(
                d.equiv(back.counit().component(y), a.counit().component(y)),
                || format!("{name}: counit at {y}"),
            )?;
        }
        for x in 0..c.num_objects() {
            for y in 0..d.num_objects() {
                let lhs = d.hom_classes(left[x], y).len();
                let rhs = c.hom_classes(x, right[y]).len();
                ensure(lhs == rhs, || {
                    format!("{name}: |Hom(F{x}, {y})| = {lhs}, |Hom({x}, G{y})| = {rhs}")
                })?;
                let k = fam.component(x, y);
                ensure(
                    k.left_classes.len() == lhs && k.right_classes.len() == rhs,
                    || format!("{name}: bijection at ({x}, {y}) has the wrong size"),
                )?;
            }
        }
    }
    println!("    {} Galois connections", fx.len());
    Ok(())
}

// ---------------------------------------------------------------- 4

fn all_object_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % m;
                    k /= m;
                    d
                })
                .collect()
        })
        .collect()
}

fn galois_connections(c: &Cat, d: &Cat) -> Vec<Adjunction> {
    let mut out = Vec::new();
    for left in all_object_maps(c.num_objects(), d.num_objects()) {
        for right in all_object_maps(d.num_objects(), c.num_objects()) {
            if let Ok(a) = Adjunction::from_object_maps(c, d, left.clone(), right) {
                if check_adjunction(&a).passed {
                    out.push(a);
                }
            }
        }
    }
    out
}

/// Identity-functor adjunctions on a group: unit u, counit u⁻¹.
fn group_adjunctions(c: &Cat) -> Vec<Adjunction> {
    let base = Adjunction::identity(c);
    let k = c.num_arrows();
    (0..k)
        .filter_map(|u| {
            let inv = (0..k).find(|&v| c.is_identity(c.c(v, u)))?;
            let a = base.with_components(vec![u], vec![inv]).ok()?;
            check_adjunction(&a).passed.then_some(a)
        })
        .collect()
}

/// Every typed component family `F x → F' x`, natural or not.
fn families(f: &FinFunctor, g: &FinFunctor) -> Vec<NatTrans> {
    let c = f.source();
    let d = f.target();
    let homs: Vec<&[usize]> = (0..c.num_objects())
        .map(|x| d.hom(f.obj(x), g.obj(x)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; homs.len()];
    if homs.iter().any(|h| h.is_empty()) {
        return out;
    }
    loop {
        let comps = choice.iter().zip(&homs).map(|(&i, h)| h[i]).collect();
        if let Ok(t) = NatTrans::new(f.clone(), g.clone(), comps) {
            out.push(t);
        }
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < homs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            return out;
        }
    }
}

fn criterion_4() -> Check {
    use StandardKind::*;
    let mut pools: Vec<(String, Vec<Adjunction>)> = vec![
        (
            "chain(3) ⇄ chain(3)".into(),
            galois_connections(&cat(Chain(3)), &cat(Chain(3))),
        ),
        (
            "chain(2) ⇄ chain(4)".into(),
            galois_connections(&cat(Chain(2)), &cat(Chain(4))),
        ),
    ];
    pools.push((
        "z2 ⇄ z2".into(),
        group_adjunctions(&cat(StandardKind::z2())),
    ));
    pools.push((
        "cyclic(3) ⇄ cyclic(3)".into(),
        group_adjunctions(&cat(StandardKind::cyclic(3))),
    ));
    let (mut total, mut passing, mut failing) = (0usize, 0usize, 0usize);
    for (name, pool) in &pools {
        ensure(!pool.is_empty(), || format!("{name}: no adjunctions"))?;
        for first in pool {
            for second in pool {
                for alpha in families(first.left(), second.left()) {
                    for beta in families(second.right(), first.right()) {
                        let m = MateSetup::new(first.clone(), second.clone(), alpha.clone(), beta)
                            .map_err(|e| e.to_string())?;
                        let (hom, uc) = (
                            check_mate_hom_square(&m).passed,
                            check_mate_unit_counit(&m).passed,
                        );
                        ensure(hom == uc, || {
                            format!("{name}: hom square says {hom}, unit/counit says {uc}")
                        })?;
                        total += 1;
                        if hom {
                            passing += 1;
                        } else {
                            failing += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(total <= 10_000, || format!("{total} candidates"))?;
    ensure(passing > 0 && failing > 0, || {
        format!("{passing} mates and {failing} non-mates")
    })?;
    println!("    {total} candidates: {passing} mates, {failing} non-mates, both checks agree");
    Ok(())
}

// ---------------------------------------------------------------- 5

/// Exhaustive universality: a cone, and every cone from every object
/// factors through it uniquely up to ≈.
fn is_limit_oracle(d: &FinFunctor, apex: usize, legs: &[usize]) -> bool {
    let (j, c) = (d.source(), d.target());
    let cone = |z: usize, ls: &[usize]| {
        (0..j.num_arrows()).all(|f| {
            let (a, b) = (j.source(f), j.target(f));
            c.source(ls[a]) == z
                && matches!(c.composite(d.arr(f), ls[a]), Some(h) if c.equiv(h, ls[b]))
        })
    };
    if legs.len() != j.num_objects() || c.num_objects() <= apex || !cone(apex, legs) {
        return false;
    }
    for z in 0..c.num_objects() {
        let homs: Vec<Vec<usize>> = (0..j.num_objects())
            .map(|x| c.hom_classes(z, d.obj(x)))
            .collect();
        if homs.iter().any(|h| h.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; homs.len()];
        loop {
            let ls: Vec<usize> = choice.iter().zip(&homs).map(|(&i, h)| h[i]).collect();
            if cone(z, &ls) {
                let mediators = c
                    .hom_classes(z, apex)
                    .into_iter()
                    .filter(|&u| {
                        legs.iter()
                            .zip(&ls)
                            .all(|(&l, &m)| matches!(c.composite(l, u), Some(h) if c.equiv(h, m)))
                    })
                    .count();
                if mediators != 1 {
                    return false;
                }
            }
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < homs[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    true
}

fn criterion_5() -> Check {
    use StandardKind::*;
    let shapes: Vec<(&str, Cat)> = vec![
        ("empty", Arc::new(FinCategory::empty())),
        ("discrete(2)", cat(Discrete(2))),
        ("parallel_pair", cat(ParallelPair)),
        ("cospan", cat(Cospan)),
        ("commutative_square", cat(CommutativeSquare)),
    ];
    let targets: Vec<(&str, Cat)> = vec![
        ("chain(4)", cat(Chain(4))),
        ("divisors(12)", cat(Divisors(12))),
        (
            "thicken(chain(3))",
            Arc::new(thicken(&std(Chain(3))).unwrap()),
        ),
    ];
    let mut diagrams = 0;
    for (sn, j) in &shapes {
        for (tn, c) in &targets {
            for d in enumerate_functors(j, c, DEFAULT_SEARCH_CAP).map_err(|e| e.to_string())? {
                let built =
                    limit_from_products_equalizers(&d).map_err(|e| format!("{sn} → {tn}: {e}"))?;
                let oracle =
                    brute_force_limit(&d).ok_or_else(|| format!("{sn} → {tn}: no limit found"))?;
                ensure(is_limit_oracle(&d, built.apex(), built.legs()), || {
                    format!("{sn} → {tn}: constructed cone is not a limit")
                })?;
                ensure(is_limit_oracle(&d, oracle.apex(), oracle.legs()), || {
                    format!("{sn} → {tn}: brute-force cone is not a limit")
                })?;
                let (fwd, bwd) = compare_limits(&built, &oracle)
                    .ok_or_else(|| format!("{sn} → {tn}: no comparison"))?;
                let id = |x: usize, y: usize, apex: usize| matches!(c.composite(x, y), Some(h) if c.equiv(h, c.identity(apex)));
                ensure(
                    id(bwd, fwd, built.apex()) && id(fwd, bwd, oracle.apex()),
                    || format!("{sn} → {tn}: comparison is not an isomorphism"),
                )?;
                for (&lb, &lo) in built.legs().iter().zip(oracle.legs()) {
                    ensure(
                        matches!(c.composite(lo, fwd), Some(h) if c.equiv(h, lb)),
                        || format!("{sn} → {tn}: comparison does not commute with the legs"),
                    )?;
                }
                diagrams += 1;
            }
        }
    }
    println!("    {diagrams} diagrams over 5 shapes and 3 categories");
    Ok(())
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Check {
    use StandardKind::*;
    let (iso, one, two, wa) = (cat(IsoPair), cat(One), cat(TwoReps), cat(WalkingArrow));
    let z2 = cat(StandardKind::z2());
    let c4 = cat(Chain(4));
    let lbl = |c: &Cat, l: &str| c.arrow_index(l).unwrap();
    let obj = |c: &Cat, o: &str| c.object_index(o).unwrap();

    // (name, F, G, diagrams L on the target of F)
    let collapse = FinFunctor::constant(&iso, &one, 0).unwrap();
    let pick = FinFunctor::constant(&one, &iso, obj(&iso, "a")).unwrap();
    let squash = FinFunctor::new(
        two.clone(),
        wa.clone(),
        vec![obj(&wa, "a"), obj(&wa, "b")],
        (0..two.num_arrows())
            .map(|f| match two.label(f) {
                "f1" | "f2" => lbl(&wa, "u"),
                "id_a" => lbl(&wa, "id_a"),
                _ => lbl(&wa, "id_b"),
            })
            .collect(),
    )
    .unwrap();
    let lift =
        FinFunctor::from_object_map(&wa, &two, vec![obj(&two, "a"), obj(&two, "b")]).unwrap();

    let on_one: Vec<FinFunctor> = (0..4)
        .map(|x| FinFunctor::constant(&one, &c4, x).unwrap())
        .collect();
    let mut on_iso = enumerate_functors(&iso, &z2, DEFAULT_SEARCH_CAP).unwrap();
    on_iso.push(FinFunctor::identity(&iso));
    let on_wa = enumerate_functors(&wa, &c4, DEFAULT_SEARCH_CAP).unwrap();

    let cases = vec![
        ("iso_pair ≃ one", collapse, pick.clone(), on_one),
        (
            "one ≃ iso_pair",
            pick,
            FinFunctor::constant(&iso, &one, 0).unwrap(),
            on_iso,
        ),
        ("two_reps ≃ walking_arrow", squash, lift, on_wa),
    ];
    let mut checked = 0;
    for (name, f, g, diagrams) in cases {
        let e = Adjunction::with_least_components(f, g).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            check_adjunction(&e).passed && is_adjoint_equivalence(&e),
            || format!("{name} is not an adjoint equivalence"),
        )?;
        for l in diagrams {
            let lim =
                brute_force_limit(&l).ok_or_else(|| format!("{name}: diagram has no limit"))?;
            let moved = transport_limit(&e, &l, &lim).map_err(|err| format!("{name}: {err}"))?;
            ensure(moved.verify(), || {
                format!("{name}: transported limit fails its scan")
            })?;
            ensure(
                is_limit_oracle(moved.diagram(), moved.apex(), moved.legs()),
                || format!("{name}: transported cone is not a limit"),
            )?;
            let lf = moved.diagram().clone();
            let direct =
                brute_force_limit(&lf).ok_or_else(|| format!("{name}: L∘F has no limit"))?;
            ensure(compare_limits(&moved, &direct).is_some(), || {
                format!("{name}: transported and direct limits disagree")
            })?;
            checked += 1;
        }
    }
    println!("    {checked} transported limits over 3 equivalences");
    Ok(())
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Check {
    use StandardKind::*;
    let z2 = cat(StandardKind::z2());
    let c4 = cat(Chain(4));
    let structures = vec![
        (
            "strict z2",
            MonoidalStructure::strict_monoid(&z2).map_err(|e| e.to_string())?,
        ),
        (
            "chain(4) min",
            MonoidalStructure::thin(&c4, 3, |x, y| x.min(y)).map_err(|e| e.to_string())?,
        ),
        (
            "chain(4) products",
            monoidal_from_products(&c4).map_err(|e| e.to_string())?,
        ),
    ];
    for (name, m) in &structures {
        let r = check_monoidal(m);
        ensure(r.passed, || format!("{name}:\n{r}"))?;
        let t = derive_associator_naturality(m).map_err(|e| format!("{name}: {e}"))?;
        ensure(is_natural_iso(&t).is_some(), || {
            format!("{name}: associator is not a natural iso")
        })?;
    }

    // single-component perturbations of one-object structures
    let mut caught = 0;
    for kind in [StandardKind::z2(), StandardKind::cyclic(3)] {
        let c = cat(kind.clone());
        let m = MonoidalStructure::strict_monoid(&c).map_err(|e| e.to_string())?;
        let k = c.num_arrows();
        let e = c.identity(0);
        for fwd in 0..k {
            for inv in 0..k {
                if fwd == e && inv == e {
                    continue;
                }
                let iso = Iso { fwd, inv };
                let invertible = c.c(fwd, inv) == e && c.c(inv, fwd) == e;
                let cases = [
                    (
                        "lambda",
                        m.with_lambda(0, iso),
                        if invertible { "triangle" } else { "lambda-iso" },
                    ),
                    (
                        "rho",
                        m.with_rho(0, iso),
                        if invertible { "triangle" } else { "rho-iso" },
                    ),
                    (
                        "alpha",
                        m.with_alpha(0, 0, 0, iso),
                        if invertible { "pentagon" } else { "alpha-iso" },
                    ),
                ];
                for (what, p, law) in cases {
                    let p = p.map_err(|err| err.to_string())?;
                    let r = check_monoidal(&p);
                    ensure(r.has_law(law), || {
                        format!(
                            "{kind}: {what} = ({}, {}) not caught as {law}:\n{r}",
                            c.label(fwd),
                            c.label(inv)
                        )
                    })?;
                    caught += 1;
                }
            }
        }
    }
    println!("    3 structures coherent, {caught} perturbations caught");
    Ok(())
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Check {
    let mut cases: Vec<(&str, ClosedMonoidalStructure)> = vec![(
        "residuated chain(2)",
        residuated_chain2().map_err(|e| e.to_string())?,
    )];
    for (name, kind) in [
        ("z2", StandardKind::z2()),
        ("cyclic(3)", StandardKind::cyclic(3)),
    ] {
        cases.push((
            name,
            strict_commutative_closed(&cat(kind)).map_err(|e| e.to_string())?,
        ));
    }
    let mut triples = 0;
    for (name, cm) in &cases {
        let r = check_closed_monoidal(cm);
        ensure(r.passed, || format!("{name}:\n{r}"))?;
        let iso = derive_tensor_hom_iso(cm).map_err(|e| format!("{name}: {e}"))?;
        let c = cm.monoidal.category();
        let n = c.num_objects();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = c.hom_classes(cm.monoidal.t(y, x), z).len();
                    let rhs = c.hom_classes(y, cm.h(x, z)).len();
                    let k = iso.families[x].component(y, z);
                    ensure(
                        lhs == rhs && k.left_classes.len() == lhs && k.right_classes.len() == rhs,
                        || format!("{name}: counts differ at ({x}, {y}, {z})"),
                    )?;
                    triples += 1;
                }
            }
        }
    }
    // residuation on chain(2) by hand: y ∧ x ≤ z ⇔ y ≤ [x, z]
    let cm = &cases[0].1;
    for x in 0..2 {
        for z in 0..2 {
            let expected = if x > z { z } else { 1 };
            ensure(cm.h(x, z) == expected, || {
                format!("[{x}, {z}] = {}", cm.h(x, z))
            })?;
        }
    }

    // [f, g] = g keeps every adjunction but breaks the mate condition
    let z = cat(StandardKind::z2());
    let good = strict_commutative_closed(&z).map_err(|e| e.to_string())?;
    let k = z.num_arrows();
    let hom = FinFunctor::new(
        good.hom.source().clone(),
        z.clone(),
        vec![0],
        (0..k * k).map(|p| p % k).collect(),
    )
    .map_err(|e| e.to_string())?;
    let bad = ClosedMonoidalStructure::with_least_components(good.monoidal.clone(), hom)
        .map_err(|e| e.to_string())?;
    ensure(!check_closed_monoidal(&bad).passed, || {
        "broken mate condition passes".into()
    })?;
    let iso = tensor_hom_iso(&bad).map_err(|e| e.to_string())?;
    let laws: BTreeSet<&str> = iso
        .report
        .violations
        .iter()
        .map(|v| v.law.as_str())
        .collect();
    ensure(laws == BTreeSet::from(["tensor-hom-natural-x"]), || {
        format!("broken families: {laws:?}")
    })?;
    println!("    {triples} triples match, broken mate condition breaks only x-naturality");
    Ok(())
}

// ---------------------------------------------------------------- 9

fn map(x: &FinSetoid, y: &FinSetoid, f: &[usize]) -> SetoidMap {
    SetoidMap::new(x.clone(), y.clone(), f.to_vec()).unwrap()
}

/// Σ over classes a of A of |h⁻¹(a)/≈|^|g⁻¹(a)/≈|.
fn fiber_count_oracle(base: &FinSetoid, g: &SetoidMap, h: &SetoidMap) -> usize {
    let classes_over = |m: &SetoidMap, a: usize| {
        (0..m.source.size())
            .filter(|&x| base.class_of(m.func[x]) == a)
            .map(|x| m.source.class_of(x))
            .collect::<BTreeSet<_>>()
            .len()
    };
    (0..base.num_classes())
        .map(|a| classes_over(h, a).pow(classes_over(g, a) as u32))
        .sum()
}

fn criterion_9() -> Check {
    let a = FinSetoid::discrete(2);
    let ex = slice_exponential(
        &a,
        &map(&FinSetoid::discrete(2), &a, &[0, 1]),
        &map(&FinSetoid::discrete(3), &a, &[0, 0, 1]),
    )
    .map_err(|e| e.to_string())?;
    ensure(
        ex.setoid.size() == 3 && ex.setoid.num_classes() == 3,
        || format!("fiber example has carrier {}", ex.setoid.size()),
    )?;

    let a3 = FinSetoid::new(&[0, 0, 1]);
    let ind = FinSetoid::indiscrete(2);
    let instances = vec![
        (
            a.clone(),
            map(&FinSetoid::discrete(2), &a, &[0, 1]),
            map(&FinSetoid::discrete(3), &a, &[0, 0, 1]),
        ),
        (
            a.clone(),
            map(&FinSetoid::indiscrete(2), &a, &[1, 1]),
            map(&FinSetoid::discrete(2), &a, &[1, 0]),
        ),
        (
            FinSetoid::discrete(1),
            map(&FinSetoid::discrete(2), &FinSetoid::discrete(1), &[0, 0]),
            map(
                &FinSetoid::new(&[0, 0, 1]),
                &FinSetoid::discrete(1),
                &[0, 0, 0],
            ),
        ),
        (
            a3.clone(),
            map(&FinSetoid::discrete(2), &a3, &[1, 2]),
            map(&FinSetoid::discrete(3), &a3, &[0, 2, 1]),
        ),
        (
            ind.clone(),
            map(&FinSetoid::discrete(1), &ind, &[1]),
            map(&FinSetoid::new(&[0, 1, 1]), &ind, &[0, 1, 0]),
        ),
        (
            a.clone(),
            map(&FinSetoid::discrete(0), &a, &[]),
            map(&FinSetoid::discrete(1), &a, &[1]),
        ),
    ];
    let mut probes_checked = 0;
    for (i, (base, g, h)) in instances.iter().enumerate() {
        let x = slice_exponential(base, g, h).map_err(|e| format!("instance {i}: {e}"))?;
        let expected = fiber_count_oracle(base, g, h);
        ensure(x.setoid.num_classes() == expected, || {
            format!(
                "instance {i}: {} classes, oracle {expected}",
                x.setoid.num_classes()
            )
        })?;
        let probes = probe_family(base, 3);
        let r = verify_lcc(base, g, h, &probes).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(r.passed, || format!("instance {i}:\n{r}"))?;
        probes_checked += probes.objects.len();

        // transports along a ≈ a2 are mutually inverse
        for a1 in 0..base.size() {
            for a2 in (0..base.size()).filter(|&a2| base.equiv(a1, a2)) {
                let v = inverse_image(a1, g).map_err(|e| e.to_string())?;
                let there = inverse_image_transport(a2, &v).map_err(|e| e.to_string())?;
                let back = inverse_image_transport(a1, &there).map_err(|e| e.to_string())?;
                ensure(back == v, || {
                    format!("instance {i}: inverse image transport at {a1} ~ {a2}")
                })?;
                for m in inverse_image_maps(a1, g, h).map_err(|e| e.to_string())? {
                    let there = inverse_image_map_transport(a2, &m).map_err(|e| e.to_string())?;
                    let back =
                        inverse_image_map_transport(a1, &there).map_err(|e| e.to_string())?;
                    ensure(back.equiv(&m), || {
                        format!("instance {i}: map transport at {a1} ~ {a2}")
                    })?;
                }
            }
        }
    }
    println!(
        "    carrier 3; {} instances, {probes_checked} probes",
        instances.len()
    );
    Ok(())
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Check {
    let mut checks = 0;
    for (name, c) in fixtures().into_iter().filter(|(_, c)| c.num_arrows() <= 12) {
        let c: Cat = Arc::new(c);
        let n = c.num_objects();
        let presheaves = standard_presheaves(&c);
        ensure(presheaves.len() >= 3, || {
            format!("{name}: too few presheaves")
        })?;
        for x in 0..n {
            // values at x: Hom(x, z) classes, then 1, 2, 1
            let mut expected: Vec<usize> = (0..n).map(|z| c.hom_classes(x, z).len()).collect();
            expected.extend([1, 2, 1]);
            for (p, &want) in presheaves.iter().zip(&expected) {
                let y = yoneda_check(p, x).map_err(|e| format!("{name}: {e}"))?;
                ensure(y.report.passed, || format!("{name} at {x}:\n{}", y.report))?;
                ensure(y.nat_classes == want && y.value_classes == want, || {
                    format!(
                        "{name} at {x}: |Nat| = {}, |F x| = {}, expected {want}",
                        y.nat_classes, y.value_classes
                    )
                })?;
                let hit: BTreeSet<usize> = y.forward.iter().copied().collect();
                ensure(hit.len() == want && y.forward.len() == want, || {
                    format!("{name} at {x}: not a bijection")
                })?;
                checks += 1;
            }
        }
    }
    println!("    {checks} (object, presheaf) pairs");
    Ok(())
}

// ---------------------------------------------------------------- 11

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_catlang"))
        .args(args)
        .output()
        .expect("binary runs");
    let text =
        String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

const AWKWARD: [&str; 10] = [
    "id",
    "a.b",
    "x->y",
    "q\"t",
    "b\\s",
    "two words",
    "category",
    "→",
    "#h",
    ":",
];

fn name_strategy() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => "[a-z][a-z0-9_']{0,3}",
        1 => proptest::sample::select(AWKWARD.to_vec()).prop_map(str::to_string),
    ]
}

/// Walks from `start` along generators, one step per choice.
fn walk(gens: &[(usize, usize)], start: usize, choices: &[usize]) -> (Vec<usize>, usize) {
    let mut at = start;
    let mut path = Vec::new();
    for &c in choices {
        let out: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].0 == at).collect();
        if out.is_empty() {
            break;
        }
        let g = out[c % out.len()];
        path.push(g);
        at = gens[g].1;
    }
    (path, at)
}

fn presentation_strategy() -> impl Strategy<Value = Document> {
    let objs = proptest::collection::btree_set(name_strategy(), 1..4);
    let gens = proptest::collection::btree_set(name_strategy(), 0..4);
    (objs, gens, any::<u64>())
        .prop_flat_map(|(objs, gens, _)| {
            let (n, k) = (objs.len(), gens.len());
            let ends = proptest::collection::vec((0..n, 0..n), k);
            let rels = proptest::collection::vec(
                (
                    0..n,
                    proptest::collection::vec(0usize..4, 0..4),
                    proptest::collection::vec(0usize..4, 0..4),
                ),
                0..4,
            );
            (Just(objs), Just(gens), ends, rels, 1usize..3)
        })
        .prop_map(|(objs, gens, ends, rels, copies)| {
            let objs: Vec<String> = objs.into_iter().collect();
            let gens: Vec<String> = gens.into_iter().filter(|g| !objs.contains(g)).collect();
            let ends = &ends[..gens.len()];
            let word = |path: &[usize]| {
                if path.is_empty() {
                    Word::Id(Default::default())
                } else {
                    // paths are written with the last step first
                    Word::Path(
                        path.iter()
                            .rev()
                            .map(|&g| Name::new(gens[g].clone()))
                            .collect(),
                    )
                }
            };
            let relations = rels
                .iter()
                .filter_map(|(start, l, r)| {
                    let (lp, le) = walk(ends, *start, l);
                    let (rp, re) = walk(ends, *start, r);
                    // `id = id` names no object, so it is not well formed
                    (le == re && !(lp.is_empty() && rp.is_empty())).then(|| Relation {
                        lhs: word(&lp),
                        rhs: word(&rp),
                    })
                })
                .collect();
            let body = PresentedBody {
                objects: objs.iter().map(|o| Name::new(o.clone())).collect(),
                generators: gens
                    .iter()
                    .zip(ends)
                    .map(|(g, &(s, t))| ArrowDecl {
                        name: Name::new(g.clone()),
                        source: Name::new(objs[s].clone()),
                        target: Name::new(objs[t].clone()),
                    })
                    .collect(),
                relations,
            };
            let items = (0..copies)
                .map(|i| {
                    Item::Category(CategoryDecl {
                        name: Name::new(format!("P{i}")),
                        body: CategoryBody::Presented(body.clone()),
                    })
                })
                .collect();
            Document { items }
        })
}

fn criterion_11() -> Check {
    let small = SaturationConfig {
        max_arrows: 64,
        max_word_length: 4,
    };
    // fixture files: AST round trip, and category round trip through the table printer
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixture_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cat"))
        .collect();
    files.sort();
    let mut parsed = 0;
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let Ok(doc) = parse(&text) else { continue };
        parsed += 1;
        let again = parse(&print_document(&doc)).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(again == doc, || {
            format!("{}: AST round trip differs", path.display())
        })?;
        if let Ok(env) = elaborate(&doc, &SaturationConfig::default()) {
            for (name, c) in &env.categories {
                let printed = print_category(name, c);
                let back = match parse(&printed).map_err(|e| e.to_string())?.items.remove(0) {
                    Item::Category(CategoryDecl {
                        body: CategoryBody::Table(t),
                        ..
                    }) => elaborate_table(name, &t).map_err(|e| e.to_string())?,
                    _ => return Err("printer did not emit a table".into()),
                };
                ensure(&back == c.as_ref(), || {
                    format!("{}: {name} table round trip differs", path.display())
                })?;
            }
        }
    }
    ensure(parsed >= 10, || {
        format!("only {parsed} fixture files parse")
    })?;

    // fuzzed well-formed presentations
    let mut runner = TestRunner::new(Config {
        cases: 500,
        failure_persistence: None,
        ..Config::default()
    });
    let fuzzed = std::cell::Cell::new(0usize);
    runner
        .run(&presentation_strategy(), |doc| {
            let text = print_document(&doc);
            let again = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            prop_assert_eq!(&again, &doc);
            let (x, y) = (elaborate(&doc, &small), elaborate(&again, &small));
            match (x, y) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x.categories, y.categories),
                (Err(x), Err(y)) => prop_assert_eq!(x, y),
                (x, y) => prop_assert!(false, "{:?} vs {:?}", x.err(), y.err()),
            }
            fuzzed.set(fuzzed.get() + 1);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let fuzzed = fuzzed.get();
    ensure(fuzzed >= 500, || format!("only {fuzzed} fuzzed documents"))?;

    // saturation
    let body = |text: &str| match parse(text).unwrap().items.remove(0) {
        Item::Category(CategoryDecl {
            body: CategoryBody::Presented(p),
            ..
        }) => p,
        _ => unreachable!(),
    };
    let z2 = saturate(
        &body(&std::fs::read_to_string(fixture_dir().join("z2_presented.cat")).unwrap()),
        &small,
    )
    .map_err(|e| e.to_string())?;
    ensure(z2.num_arrows() == 2, || {
        format!("presented z2 has {} arrows", z2.num_arrows())
    })?;
    let free = saturate(
        &body(&std::fs::read_to_string(fixture_dir().join("free_loop.cat")).unwrap()),
        &small,
    );
    ensure(matches!(free, Err(DslError::SaturationExceeded(_))), || {
        format!("free loop gave {free:?}")
    })?;

    // exit codes
    let f = |n: &str| fixture_dir().join(n).to_string_lossy().into_owned();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["check".into(), f("z2.cat")], 0),
        (vec!["check".into(), f("two_reps.cat")], 0),
        (vec!["check".into(), f("broken.cat")], 1),
        (vec!["check".into(), f("syntax_error.cat")], 2),
        (vec!["check".into(), f("free_loop.cat")], 2),
        (vec!["check".into(), f("bad_relation.cat")], 2),
        (vec!["check".into(), f("no_such_file.cat")], 2),
        (
            vec![
                "limit".into(),
                f("cospan_limit.cat"),
                "--diagram".into(),
                "D".into(),
            ],
            0,
        ),
    ];
    for (args, code) in &cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (got, out) = run_cli(&argv);
        ensure(got == *code, || {
            format!(
                "catlang {} exited {got}, expected {code}\n{out}",
                args.join(" ")
            )
        })?;
        if args[0] == "limit" {
            ensure(out.contains("constructive == oracle up to iso"), || {
                format!("limit output:\n{out}")
            })?;
        }
    }
    println!(
        "    {parsed} fixture files, {fuzzed} fuzzed presentations, {} CLI runs",
        cases.len()
    );
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("law suite", criterion_1),
        ("duality", criterion_2),
        ("adjunction ⇔ hom bijection", criterion_3),
        ("mate characterizations agree", criterion_4),
        ("constructive limits vs oracle", criterion_5),
        ("limit transport", criterion_6),
        ("monoidal coherence", criterion_7),
        ("closed monoidal", criterion_8),
        ("setoid slices", criterion_9),
        ("Yoneda", criterion_10),
        ("language and CLI", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        match run() {
            Ok(()) => println!("PASS criterion {}: {name} ({:.1?})", i + 1, start.elapsed()),
            Err(e) => {
                println!("FAIL criterion {}: {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
