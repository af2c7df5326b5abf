//! Named standard categories.

use std::fmt;
use std::str::FromStr;

use crate::category::{Arrow, FinCategory};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    One,
    Discrete(usize),
    WalkingArrow,
    ParallelPair,
    Cospan,
    Span,
    CommutativeSquare,
    Chain(usize),
    Divisors(usize),
    /// One-object category; `table[g][f]` is `g ∘ f` and element 0 is the unit.
    Monoid(Vec<Vec<usize>>),
    IsoPair,
    TwoReps,
}

impl StandardKind {
    pub fn z2() -> StandardKind {
        StandardKind::Monoid(vec![vec![0, 1], vec![1, 0]])
    }

    /// Cyclic group of order `n` as a one-object category.
    pub fn cyclic(n: usize) -> StandardKind {
        StandardKind::Monoid(
            (0..n)
                .map(|g| (0..n).map(|f| (g + f) % n).collect())
                .collect(),
        )
    }
}

impl fmt::Display for StandardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardKind::One => write!(f, "one"),
            StandardKind::Discrete(n) => write!(f, "discrete({n})"),
            StandardKind::WalkingArrow => write!(f, "walking_arrow"),
            StandardKind::ParallelPair => write!(f, "parallel_pair"),
            StandardKind::Cospan => write!(f, "cospan"),
            StandardKind::Span => write!(f, "span"),
            StandardKind::CommutativeSquare => write!(f, "commutative_square"),
            StandardKind::Chain(n) => write!(f, "chain({n})"),
            StandardKind::Divisors(n) => write!(f, "divisors({n})"),
            StandardKind::Monoid(t) => {
                let rows: Vec<String> = t
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                write!(f, "monoid({})", rows.join("; "))
            }
            StandardKind::IsoPair => write!(f, "iso_pair"),
            StandardKind::TwoReps => write!(f, "two_reps"),
        }
    }
}

impl FromStr for StandardKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let number = |arg: Option<&str>| -> Result<usize> {
            arg.and_then(|a| a.trim().parse().ok())
                .ok_or_else(|| Error::Fixture(format!("{s}: expected a numeric parameter")))
        };
        Ok(match head {
            "one" => StandardKind::One,
            "z2" => StandardKind::z2(),
            "walking_arrow" => StandardKind::WalkingArrow,
            "parallel_pair" => StandardKind::ParallelPair,
            "cospan" => StandardKind::Cospan,
            "span" => StandardKind::Span,
            "commutative_square" => StandardKind::CommutativeSquare,
            "iso_pair" => StandardKind::IsoPair,
            "two_reps" => StandardKind::TwoReps,
            "discrete" => StandardKind::Discrete(number(arg)?),
            "chain" => StandardKind::Chain(number(arg)?),
            "divisors" => StandardKind::Divisors(number(arg)?),
            "monoid" => {
                let body = arg.ok_or_else(|| Error::Fixture("monoid needs a table".into()))?;
                let table = body
                    .split(';')
                    .map(|row| {
                        row.split_whitespace()
                            .map(|x| {
                                x.parse::<usize>().map_err(|_| {
                                    Error::Fixture(format!("bad monoid table entry {x:?}"))
                                })
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                StandardKind::Monoid(table)
            }
            _ => return Err(Error::Fixture(format!("unknown kind {s:?}"))),
        })
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Category with singleton classes whose arrows are listed explicitly;
/// composites are found by `compose(g, f)` returning a label.
fn explicit(
    objects: &[&str],
    arrows: &[(&str, usize, usize)],
    compose: impl Fn(&str, &str) -> Option<String>,
) -> Result<FinCategory> {
    let arrows: Vec<Arrow> = arrows
        .iter()
        .map(|&(l, s, t)| Arrow::new(s, t, l))
        .collect();
    let cloned = arrows.clone();
    let find = |l: &str| cloned.iter().position(|a| a.label == l);
    let identities = objects
        .iter()
        .map(|o| find(&format!("id_{o}")).expect("identity declared"))
        .collect();
    let eq = (0..arrows.len()).collect();
    FinCategory::from_fn(names(objects), arrows, eq, identities, |g, f| {
        let (lg, lf) = (&cloned[g].label, &cloned[f].label);
        if lg.starts_with("id_") {
            return Some(f);
        }
        if lf.starts_with("id_") {
            return Some(g);
        }
        compose(lg, lf).and_then(|l| find(&l))
    })
}

/// Thin category on `names` with an arrow `i → j` exactly when `leq(i, j)`.
/// Arrows are ordered lexicographically by `(i, j)` and labelled `i_j`.
pub fn poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
    let n = names.len();
    let mut arrows = Vec::new();
    let mut index = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                index[i * n + j] = Some(arrows.len());
                arrows.push(Arrow::new(i, j, format!("{}_{}", names[i], names[j])));
            }
        }
    }
    let identities = (0..n)
        .map(|i| index[i * n + i])
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Fixture("order relation is not reflexive".into()))?;
    let eq = (0..arrows.len()).collect();
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
    FinCategory::from_fn(names, arrows, eq, identities, |g, f| {
        index[ends[f].0 * n + ends[g].1]
    })
}

fn monoid(table: &[Vec<usize>]) -> Result<FinCategory> {
    let k = table.len();
    if k == 0 {
        return Err(Error::Fixture(
            "inconsistent monoid table: no elements".into(),
        ));
    }
    if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != k) {
        return Err(Error::Fixture(format!(
            "inconsistent monoid table: row {i} has {} entries, expected {k}",
            row.len()
        )));
    }
    if table.iter().flatten().any(|&x| x >= k) {
        return Err(Error::Fixture(
            "inconsistent monoid table: entry outside the element range".into(),
        ));
    }
    const LETTERS: [&str; 8] = ["e", "g", "h", "k", "l", "p", "q", "r"];
    let arrows = (0..k)
        .map(|i| {
            let label = LETTERS
                .get(i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("m{i}"));
            Arrow::new(0, 0, label)
        })
        .collect();
    FinCategory::from_fn(names(&["*"]), arrows, (0..k).collect(), vec![0], |g, f| {
        Some(table[g][f])
    })
}

fn divisors(n: usize) -> Result<FinCategory> {
    if n == 0 {
        return Err(Error::Fixture("divisors(0) is infinite".into()));
    }
    let ds: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let labels = ds.iter().map(|d| d.to_string()).collect();
    poset(labels, |i, j| ds[j] % ds[i] == 0)
}

/// Builds the named fixture and checks its laws.
pub fn standard_category(kind: &StandardKind) -> Result<FinCategory> {
    let c = match kind {
        StandardKind::One => explicit(&["*"], &[("id_*", 0, 0)], |_, _| None)?,
        StandardKind::Discrete(n) => {
            let objs: Vec<String> = (0..*n).map(|i| i.to_string()).collect();
            poset(objs, |i, j| i == j)?
        }
        StandardKind::WalkingArrow => explicit(
            &["a", "b"],
            &[("id_a", 0, 0), ("id_b", 1, 1), ("u", 0, 1)],
            |_, _| None,
        )?,
        StandardKind::ParallelPair => explicit(
            &["a", "b"],
            &[("id_a", 0, 0), ("id_b", 1, 1), ("s", 0, 1), ("t", 0, 1)],
            |_, _| None,
        )?,
        StandardKind::Cospan => explicit(
            &["a", "b", "c"],
            &[
                ("id_a", 0, 0),
                ("id_b", 1, 1),
                ("id_c", 2, 2),
                ("f", 0, 2),
                ("g", 1, 2),
            ],
            |_, _| None,
        )?,
        StandardKind::Span => explicit(
            &["a", "b", "c"],
            &[
                ("id_a", 0, 0),
                ("id_b", 1, 1),
                ("id_c", 2, 2),
                ("f", 2, 0),
                ("g", 2, 1),
            ],
            |_, _| None,
        )?,
        StandardKind::CommutativeSquare => explicit(
            &["a", "b", "c", "d"],
            &[
                ("id_a", 0, 0),
                ("id_b", 1, 1),
                ("id_c", 2, 2),
                ("id_d", 3, 3),
                ("f", 0, 1),
                ("g", 0, 2),
                ("h", 1, 3),
                ("k", 2, 3),
                ("diag", 0, 3),
            ],
            |g, f| match (g, f) {
                ("h", "f") | ("k", "g") => Some("diag".into()),
                _ => None,
            },
        )?,
        StandardKind::Chain(n) => {
            let objs: Vec<String> = (0..*n).map(|i| i.to_string()).collect();
            poset(objs, |i, j| i <= j)?
        }
        StandardKind::Divisors(n) => divisors(*n)?,
        StandardKind::Monoid(table) => {
            let c = monoid(table)?;
            let report = c.check_laws();
            if !report.passed {
                return Err(Error::Fixture(format!(
                    "inconsistent monoid table:\n{report}"
                )));
            }
            c
        }
        StandardKind::IsoPair => explicit(
            &["a", "b"],
            &[("id_a", 0, 0), ("id_b", 1, 1), ("i", 0, 1), ("j", 1, 0)],
            |g, f| match (g, f) {
                ("j", "i") => Some("id_a".into()),
                ("i", "j") => Some("id_b".into()),
                _ => None,
            },
        )?,
        StandardKind::TwoReps => {
            let c = explicit(
                &["a", "b"],
                &[("id_a", 0, 0), ("id_b", 1, 1), ("f1", 0, 1), ("f2", 0, 1)],
                |_, _| None,
            )?;
            c.with_eq_classes(vec![0, 1, 2, 2])?
        }
    };
    let report = c.check_laws();
    if !report.passed {
        return Err(Error::Laws(report));
    }
    Ok(c)
}

/// Doubles every non-identity arrow into two `≈` representatives, `f` and
/// `f'`. Composites land on the first copy.
pub fn thicken(c: &FinCategory) -> Result<FinCategory> {
    let mut arrows = Vec::new();
    let mut eq = Vec::new();
    let mut first_copy = Vec::with_capacity(c.num_arrows());
    let mut base = Vec::new();
    for f in 0..c.num_arrows() {
        let a = c.arrow(f);
        first_copy.push(arrows.len());
        arrows.push(a.clone());
        base.push(f);
        if !c.is_identity(f) {
            arrows.push(Arrow::new(a.source, a.target, format!("{}'", a.label)));
            base.push(f);
        }
    }
    for &f in &base {
        eq.push(first_copy[c.eq_class(f)]);
    }
    let identities = c.identities().iter().map(|&i| first_copy[i]).collect();
    FinCategory::from_fn(c.objects().to_vec(), arrows, eq, identities, |g, f| {
        c.composite(base[g], base[f]).map(|h| first_copy[h])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let one = standard_category(&StandardKind::One).unwrap();
        assert_eq!((one.num_objects(), one.num_arrows()), (1, 1));
        let pp = standard_category(&StandardKind::ParallelPair).unwrap();
        assert_eq!((pp.num_objects(), pp.num_arrows()), (2, 4));
    }

    #[test]
    fn divisors_of_twelve() {
        let c = standard_category(&StandardKind::Divisors(12)).unwrap();
        assert_eq!(c.num_objects(), 6);
        // oracle: count divisibility pairs among the divisors directly
        let ds: Vec<usize> = (1..=12).filter(|d| 12 % d == 0).collect();
        let pairs = ds
            .iter()
            .flat_map(|a| ds.iter().map(move |b| (a, b)))
            .filter(|(a, b)| *b % *a == 0)
            .count();
        assert_eq!(c.num_arrows(), pairs);
        assert_eq!(pairs, 18);
    }

    #[test]
    fn parse_kinds() {
        for s in [
            "one",
            "discrete(3)",
            "chain(4)",
            "divisors(12)",
            "monoid(0 1; 1 0)",
            "two_reps",
        ] {
            let k: StandardKind = s.parse().unwrap();
            assert_eq!(k.to_string().parse::<StandardKind>().unwrap(), k);
        }
        assert!(matches!(
            "wibble".parse::<StandardKind>(),
            Err(Error::Fixture(_))
        ));
    }

    #[test]
    fn inconsistent_monoid_tables() {
        let ragged = StandardKind::Monoid(vec![vec![0, 1], vec![1]]);
        assert!(matches!(standard_category(&ragged), Err(Error::Fixture(_))));
        // 0 is not a unit: 0.1 = 0
        let no_unit = StandardKind::Monoid(vec![vec![0, 0], vec![1, 0]]);
        assert!(matches!(
            standard_category(&no_unit),
            Err(Error::Fixture(_))
        ));
    }

    #[test]
    fn thickened_chain_is_lawful_and_proof_relevant() {
        let c = standard_category(&StandardKind::Chain(3)).unwrap();
        let t = thicken(&c).unwrap();
        assert!(t.check_laws().passed);
        assert_eq!(t.num_arrows(), 3 + 2 * 3);
        assert_eq!(t.num_classes(), c.num_classes());
    }
}
