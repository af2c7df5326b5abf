//! The `catlang` subcommands as plain functions from source text to an
//! [`Outcome`]. `main.rs` parses arguments and prints; the browser demo
//! calls the same functions.

use std::sync::Arc;

use serde::Serialize;

use fincat::adjoint::{
    check_adjunction, check_hom_iso, hom_iso_of_adjunction, is_adjoint_equivalence, Adjunction,
};
use fincat::catlang::{
    self, elaborate, parse, print_category, CategoryBody, DslError, Elaborated, FunctorKind, Item,
    SaturationConfig,
};
use fincat::limits::{
    brute_force_limit, compare_limits, find_coproduct, find_equalizer, find_initial, find_product,
    find_pullback, find_terminal, initial_to_terminal_op, limit_from_products_equalizers,
    terminal_to_initial_op, LimitData,
};
use fincat::monoidal::{
    check_monoidal, derive_associator_naturality, monoidal_from_products, MonoidalStructure,
};
use fincat::setoidcat::{
    probe_setoids, standard_presheaves, yoneda_check, Presheaf, DEFAULT_PROBE_SIZE,
};
use fincat::transfor::{check_functor, check_natural, is_natural_iso, op_functor, Cat, FinFunctor};
use fincat::{Error, FinCategory, LawReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Passed,
    Violated,
    InputError,
}

impl Status {
    /// 0 when everything holds, 1 on a law violation, 2 on bad input.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Passed => 0,
            Status::Violated => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub report: LawReport,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            status: Status::Passed,
            lines: Vec::new(),
            report: LawReport::new(),
        }
    }

    fn input_error(message: impl Into<String>) -> Self {
        Outcome {
            status: Status::InputError,
            lines: vec![format!("error: {}", message.into())],
            report: LawReport::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn absorb(&mut self, scope: &str, r: LawReport) {
        if !r.passed && self.status == Status::Passed {
            self.status = Status::Violated;
        }
        self.report.absorb(scope, r);
    }

    fn violation(&mut self, law: &str, indices: Vec<usize>, description: impl Into<String>) {
        let description = description.into();
        self.line(format!("FAIL {description}"));
        let mut r = LawReport::new();
        r.push(law, indices, description);
        self.absorb("cli", r);
    }

    fn expect(&mut self, law: &str, ok: bool, description: impl Into<String>) {
        let description = description.into();
        if ok {
            self.line(format!("ok   {description}"));
        } else {
            self.violation(law, vec![], description);
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Text for standard output: the lines, then any violations.
    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("outcome serializes");
        }
        let mut out = self.lines.join("\n");
        if !self.report.violations.is_empty() {
            out.push_str(&format!("\n{}", self.report));
        }
        out
    }
}

impl From<DslError> for Outcome {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Law { name, report } => {
                let mut out = Outcome::new();
                out.line(format!("`{name}` fails its laws"));
                out.absorb(&name, report);
                out
            }
            DslError::Core(e) => e.into(),
            other => Outcome::input_error(other.to_string()),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Laws(report) => {
                let mut out = Outcome::new();
                out.line("law check failed");
                out.absorb("laws", report);
                out
            }
            Error::Internal(m) => {
                let mut out = Outcome::new();
                out.violation("internal", vec![], m);
                out
            }
            other => Outcome::input_error(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub saturation: SaturationConfig,
    pub probe_size: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            saturation: SaturationConfig::default(),
            probe_size: DEFAULT_PROBE_SIZE,
        }
    }
}

fn run(f: impl FnOnce() -> Result<Outcome, Outcome>) -> Outcome {
    f().unwrap_or_else(|e| e)
}

pub fn load(text: &str, opts: &Options) -> Result<Elaborated, Outcome> {
    let doc = parse(text)?;
    Ok(elaborate(&doc, &opts.saturation)?)
}

fn name_of(env: &Elaborated, c: &Cat) -> String {
    env.categories
        .iter()
        .find(|(_, d)| Arc::ptr_eq(c, d) || **c == **d)
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| "?".into())
}

fn kind_word(k: FunctorKind) -> &'static str {
    match k {
        FunctorKind::Functor => "functor",
        FunctorKind::Diagram => "diagram",
    }
}

fn describe(c: &FinCategory) -> String {
    format!(
        "{} objects, {} arrows, {} classes",
        c.num_objects(),
        c.num_arrows(),
        c.num_classes()
    )
}

fn find_category<'a>(
    env: &'a Elaborated,
    name: Option<&str>,
) -> Result<(&'a str, &'a Cat), Outcome> {
    match name {
        Some(n) => env
            .categories
            .iter()
            .find(|(m, _)| m == n)
            .map(|(m, c)| (m.as_str(), c))
            .ok_or_else(|| Outcome::input_error(format!("no category named `{n}`"))),
        None => env
            .categories
            .first()
            .map(|(m, c)| (m.as_str(), c))
            .ok_or_else(|| Outcome::input_error("the file declares no category")),
    }
}

fn find_functor(env: &Elaborated, name: &str) -> Result<FinFunctor, Outcome> {
    env.functor(name)
        .map(|f| f.functor.clone())
        .ok_or_else(|| Outcome::input_error(format!("no functor or diagram named `{name}`")))
}

/// Re-runs every law check on everything the file declares.
pub fn check(text: &str, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let mut out = Outcome::new();
        for (name, c) in &env.categories {
            out.absorb(name, c.check_laws());
            out.line(format!("category {name}: {}", describe(c)));
        }
        for f in &env.functors {
            out.absorb(&f.name, check_functor(&f.functor));
            out.line(format!(
                "{} {} : {} -> {}",
                kind_word(f.kind),
                f.name,
                name_of(&env, f.functor.source()),
                name_of(&env, f.functor.target())
            ));
        }
        for (name, t) in &env.nats {
            out.absorb(name, check_natural(t));
            let iso = if is_natural_iso(t).is_some() {
                " (iso)"
            } else {
                ""
            };
            out.line(format!("nat {name}: natural{iso}"));
        }
        out.line(match out.status {
            Status::Passed => "all laws hold".to_string(),
            _ => "law violations found".to_string(),
        });
        Ok(out)
    })
}

fn reprint(name: &str, c: &FinCategory) -> Result<FinCategory, DslError> {
    let doc = parse(&print_category(name, c))?;
    match &doc.items[..] {
        [Item::Category(d)] => match &d.body {
            CategoryBody::Table(t) => catlang::elaborate_table(name, t),
            CategoryBody::Presented(_) => unreachable!("printer emits tables"),
        },
        _ => unreachable!("printer emits one category"),
    }
}

/// Duality round trips: `op ∘ op`, printing, terminal/initial, functors.
pub fn op_test(text: &str, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let mut out = Outcome::new();
        for (name, c) in &env.categories {
            let op: Cat = Arc::new(c.op());
            out.expect(
                "op-involution",
                op.op() == **c,
                format!("{name}: op(op(C)) == C"),
            );
            let printed = reprint(name, c).map(|d| d == **c).unwrap_or(false)
                && reprint(name, &op).map(|d| d == *op).unwrap_or(false);
            out.expect(
                "print-round-trip",
                printed,
                format!("{name}: print/parse round trip of C and op(C)"),
            );

            let t = find_terminal(c);
            let i = find_initial(c);
            out.expect(
                "terminal-initial",
                t.as_ref().map(terminal_to_initial_op) == find_initial(&op),
                format!("{name}: terminal of C is initial in op(C)"),
            );
            out.expect(
                "initial-terminal",
                i.as_ref().map(initial_to_terminal_op) == find_terminal(&op),
                format!("{name}: initial of C is terminal in op(C)"),
            );
            let mut constants = true;
            for x in 0..c.num_objects() {
                let k = FinFunctor::constant(c, c, x)?;
                constants &= op_functor(&k) == FinFunctor::constant(&op, &op, x)?;
            }
            out.expect(
                "constant-self-dual",
                constants,
                format!("{name}: op of a constant functor is constant"),
            );
        }
        for f in &env.functors {
            out.expect(
                "functor-op-involution",
                op_functor(&op_functor(&f.functor)) == f.functor,
                format!("{}: op(op(F)) == F", f.name),
            );
        }
        Ok(out)
    })
}

/// Which universal constructions each category has.
pub fn limits(text: &str, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let mut out = Outcome::new();
        for (name, c) in &env.categories {
            let obj = |u: Option<usize>| {
                u.map(|x| c.object_name(x).to_string())
                    .unwrap_or_else(|| "none".into())
            };
            let n = c.num_objects();
            let terminal = find_terminal(c).map(|u| u.object);
            let initial = find_initial(c).map(|u| u.object);
            let (mut products, mut coproducts, mut pairs) = (0, 0, 0);
            for a in 0..n {
                for b in a..n {
                    pairs += 1;
                    products += find_product(c, a, b).is_some() as usize;
                    coproducts += find_coproduct(c, a, b).is_some() as usize;
                }
            }
            let reps: Vec<usize> = (0..c.num_arrows())
                .filter(|&f| c.eq_class(f) == f)
                .collect();
            let (mut equalizers, mut parallel, mut pullbacks, mut cospans) = (0, 0, 0, 0);
            for (i, &f) in reps.iter().enumerate() {
                for &g in &reps[i..] {
                    if c.is_parallel(f, g) {
                        parallel += 1;
                        equalizers += find_equalizer(c, f, g)?.is_some() as usize;
                    }
                    if c.target(f) == c.target(g) {
                        cospans += 1;
                        pullbacks += find_pullback(c, f, g)?.is_some() as usize;
                    }
                }
            }
            let finite = terminal.is_some() && products == pairs && equalizers == parallel;
            out.line(format!("category {name}: {}", describe(c)));
            out.line(format!("  terminal: {}", obj(terminal)));
            out.line(format!("  initial: {}", obj(initial)));
            out.line(format!("  binary products: {products}/{pairs}"));
            out.line(format!("  binary coproducts: {coproducts}/{pairs}"));
            out.line(format!("  equalizers: {equalizers}/{parallel}"));
            out.line(format!("  pullbacks: {pullbacks}/{cospans}"));
            out.line(format!(
                "  finite limits: {}",
                if finite { "yes" } else { "no" }
            ));
        }
        Ok(out)
    })
}

fn cone_line(tag: &str, c: &FinCategory, l: &LimitData) -> String {
    let legs: Vec<&str> = l.legs().iter().map(|&f| c.label(f)).collect();
    format!(
        "{tag} limit: apex {}, legs [{}]",
        c.object_name(l.apex()),
        legs.join(", ")
    )
}

/// Limit of one diagram by products and equalizers, compared with the
/// exhaustive search.
pub fn limit(text: &str, diagram: &str, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let d = find_functor(&env, diagram)?;
        let c = d.target().clone();
        let mut out = Outcome::new();
        out.line(format!(
            "diagram {diagram} : {} -> {} ({} objects, {} arrows in the shape)",
            name_of(&env, d.source()),
            name_of(&env, d.target()),
            d.source().num_objects(),
            d.source().num_arrows()
        ));
        let oracle = brute_force_limit(&d);
        let constructive = limit_from_products_equalizers(&d);
        if let Some(o) = &oracle {
            out.line(cone_line("oracle", &c, o));
        }
        match (oracle, constructive) {
            (Some(o), Ok(k)) => {
                out.line(cone_line("constructive", &c, &k));
                match compare_limits(&k, &o) {
                    Some((fwd, bwd)) => out.line(format!(
                        "constructive == oracle up to iso ({} one way, {} back)",
                        c.label(fwd),
                        c.label(bwd)
                    )),
                    None => out.violation(
                        "limit-agreement",
                        vec![],
                        "constructive and oracle limits are not isomorphic",
                    ),
                }
            }
            (None, Ok(k)) => {
                out.line(cone_line("constructive", &c, &k));
                out.violation(
                    "limit-agreement",
                    vec![],
                    "constructive cone found but the oracle finds no limit",
                );
            }
            (Some(_), Err(Error::StructureAbsent(s))) => {
                out.line(format!(
                    "constructive: unavailable, the category lacks the {s}"
                ));
            }
            (None, Err(Error::StructureAbsent(s))) => {
                out.line(format!("no limit exists; constructive route lacks the {s}"));
            }
            (_, Err(e)) => return Err(e.into()),
        }
        Ok(out)
    })
}

/// The Yoneda bijection at `object` against representables, the terminal
/// presheaf and constant presheaves on every probe setoid.
pub fn yoneda(text: &str, object: &str, category: Option<&str>, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let (name, c) = match category {
            Some(_) => find_category(&env, category)?,
            None => env
                .categories
                .iter()
                .find(|(_, c)| c.object_index(object).is_some())
                .map(|(m, c)| (m.as_str(), c))
                .ok_or_else(|| {
                    Outcome::input_error(format!("no category has an object `{object}`"))
                })?,
        };
        let x = c
            .object_index(object)
            .ok_or_else(|| Outcome::input_error(format!("`{name}` has no object `{object}`")))?;
        let mut presheaves: Vec<(String, Presheaf)> = Vec::new();
        let standard = standard_presheaves(c);
        let n = c.num_objects();
        for (i, p) in standard.into_iter().enumerate() {
            let label = match i {
                i if i < n => format!("y({})", c.object_name(i)),
                i if i == n => "terminal".to_string(),
                i if i == n + 1 => "constant discrete(2)".to_string(),
                _ => "constant indiscrete(2)".to_string(),
            };
            presheaves.push((label, p));
        }
        for s in probe_setoids(opts.probe_size) {
            let label = format!("constant setoid {:?}", s.classes());
            presheaves.push((label, Presheaf::constant(c, s)));
        }
        let mut out = Outcome::new();
        out.line(format!("category {name}, object {object}"));
        for (label, p) in &presheaves {
            let y = yoneda_check(p, x)?;
            out.line(format!(
                "  F = {label}: |Nat[y({object}), F]| = {}, |F({object})| = {}",
                y.nat_classes, y.value_classes
            ));
            out.absorb(label, y.report);
        }
        out.line(format!("{} presheaves checked", presheaves.len()));
        Ok(out)
    })
}

/// `products` uses the cartesian structure, `strict` the multiplication of
/// a one-object category. Without a choice, one-object categories are
/// treated as strict.
pub fn monoidal_check(
    text: &str,
    category: Option<&str>,
    structure: Option<&str>,
    opts: &Options,
) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let (name, c) = find_category(&env, category)?;
        let strict = match structure {
            Some("strict") => true,
            Some("products") => false,
            Some(other) => {
                return Err(Outcome::input_error(format!("unknown structure `{other}`")))
            }
            None => c.num_objects() == 1,
        };
        let m = if strict {
            MonoidalStructure::strict_monoid(c)?
        } else {
            monoidal_from_products(c)?
        };
        let mut out = Outcome::new();
        out.line(format!(
            "category {name} with the {} structure, unit {}",
            if strict { "strict" } else { "cartesian" },
            c.object_name(m.unit())
        ));
        let report = check_monoidal(&m);
        let passed = report.passed;
        out.absorb("monoidal", report);
        if passed {
            out.line("ok   unitors, associator, triangle and pentagon");
            let alpha = derive_associator_naturality(&m)?;
            out.expect(
                "associator-iso",
                is_natural_iso(&alpha).is_some(),
                "associator is a natural isomorphism on C x (C x C)",
            );
        }
        Ok(out)
    })
}

/// `left ⊣ right`, with the named unit and counit or least components.
pub fn adjoint_check(
    text: &str,
    left: &str,
    right: &str,
    unit: Option<&str>,
    counit: Option<&str>,
    opts: &Options,
) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let f = find_functor(&env, left)?;
        let g = find_functor(&env, right)?;
        let a = match (unit, counit) {
            (Some(u), Some(e)) => {
                let nat = |n: &str| {
                    env.nat(n).cloned().ok_or_else(|| {
                        Outcome::input_error(format!("no natural transformation named `{n}`"))
                    })
                };
                Adjunction::new(f, g, nat(u)?, nat(e)?)?
            }
            (None, None) => Adjunction::with_least_components(f, g)?,
            _ => {
                return Err(Outcome::input_error(
                    "give both --unit and --counit, or neither",
                ))
            }
        };
        let mut out = Outcome::new();
        out.line(format!(
            "{left} : {} -> {} left adjoint to {right}",
            name_of(&env, a.domain()),
            name_of(&env, a.codomain())
        ));
        let report = check_adjunction(&a);
        let passed = report.passed;
        out.absorb("adjunction", report);
        if !passed {
            return Ok(out);
        }
        out.line("ok   triangle identities");
        let fam = hom_iso_of_adjunction(&a)?;
        out.absorb("hom-iso", check_hom_iso(&fam)?);
        let (c, d) = (a.domain(), a.codomain());
        let counts = (0..c.num_objects()).all(|x| {
            (0..d.num_objects()).all(|y| {
                d.hom_classes(a.left().obj(x), y).len() == c.hom_classes(x, a.right().obj(y)).len()
            })
        });
        out.expect(
            "hom-iso-cardinality",
            counts,
            "|Hom(FX, Y)| = |Hom(X, GY)| for all X, Y",
        );
        if is_adjoint_equivalence(&a) {
            out.line("adjoint equivalence: unit and counit are isomorphisms");
        }
        Ok(out)
    })
}

/// What the file elaborates to, with every category as a table.
pub fn explain(text: &str, opts: &Options) -> Outcome {
    run(|| {
        let env = load(text, opts)?;
        let mut out = Outcome::new();
        for (name, c) in &env.categories {
            out.line(format!("# {name}: {}", describe(c)));
            for l in print_category(name, c).lines() {
                out.line(l);
            }
        }
        for f in &env.functors {
            let (s, t) = (f.functor.source(), f.functor.target());
            out.line(format!(
                "# {} {} : {} -> {}",
                kind_word(f.kind),
                f.name,
                name_of(&env, s),
                name_of(&env, t)
            ));
            for x in 0..s.num_objects() {
                out.line(format!(
                    "  {} |-> {}",
                    s.object_name(x),
                    t.object_name(f.functor.obj(x))
                ));
            }
            for a in 0..s.num_arrows() {
                out.line(format!(
                    "  {} |-> {}",
                    s.label(a),
                    t.label(f.functor.arr(a))
                ));
            }
        }
        for (name, t) in &env.nats {
            let c = t.source().target();
            out.line(format!("# nat {name}"));
            for x in 0..t.source().source().num_objects() {
                out.line(format!(
                    "  at {}: {}",
                    t.source().source().object_name(x),
                    c.label(t.component(x))
                ));
            }
        }
        Ok(out)
    })
}
