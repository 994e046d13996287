//! Maps from two variables into n-space that send the line `u + v = 1` into
//! the hyperplane, and pullbacks along them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classes::is_in_j;
use crate::error::{Error, Result};
use crate::poly::{parse_any, rat, Monomial, Polynomial, PolynomialDocument, Rational};
use crate::registry::Registry;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapProvenance {
    /// Binomial monomials of the given degree.
    Veronese { degree: u32 },
    /// Terms of an element of H(2) of the given degree.
    FromH2 { degree: u32 },
    /// `u / |U|` on the U group, `v / |V|` on the V group, zero elsewhere.
    Linear { u: Vec<usize>, v: Vec<usize> },
}

impl fmt::Display for MapProvenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |g: &[usize]| {
            g.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            MapProvenance::Veronese { degree } => write!(f, "veronese({degree})"),
            MapProvenance::FromH2 { degree } => write!(f, "from_h2({degree})"),
            MapProvenance::Linear { u, v } => write!(f, "linear({}/{})", join(u), join(v)),
        }
    }
}

/// Components `φ_1..φ_n` in variables `(u, v)` with nonnegative coefficients
/// and `Σ φ_j ∈ J(2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneMap {
    components: Vec<Polynomial>,
    provenance: MapProvenance,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDocument {
    pub provenance: String,
    pub components: Vec<PolynomialDocument>,
}

impl HyperplaneMap {
    pub fn new(components: Vec<Polynomial>, provenance: MapProvenance) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidMap("no components".into()));
        }
        let mut sum = Polynomial::zero(2);
        for (i, c) in components.iter().enumerate() {
            if c.n() != 2 {
                return Err(Error::InvalidMap(format!(
                    "component {} has {} variables, expected 2",
                    i + 1,
                    c.n()
                )));
            }
            if !c.is_nonnegative() {
                return Err(Error::InvalidMap(format!(
                    "component {} = {c} has a negative coefficient",
                    i + 1
                )));
            }
            sum = &sum + c;
        }
        if !is_in_j(&sum) {
            return Err(Error::InvalidMap(format!(
                "components sum to {sum}, which is not 1 on u + v = 1"
            )));
        }
        Ok(HyperplaneMap {
            components,
            provenance,
        })
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn provenance(&self) -> &MapProvenance {
        &self.provenance
    }

    pub fn component_sum(&self) -> Polynomial {
        self.components
            .iter()
            .fold(Polynomial::zero(2), |acc, c| &acc + c)
    }

    /// Component `i` of the result is component `order[i]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let n = self.arity();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::InvalidMap(format!(
                "{order:?} is not a permutation of 0..{n}"
            )));
        }
        Ok(HyperplaneMap {
            components: order.iter().map(|&i| self.components[i].clone()).collect(),
            provenance: self.provenance.clone(),
        })
    }

    pub fn to_document(&self) -> MapDocument {
        MapDocument {
            provenance: self.provenance.to_string(),
            components: self.components.iter().map(Into::into).collect(),
        }
    }
}

/// `(u^{n-1}, ..., C(n-1, j) u^j v^{n-1-j}, ..., v^{n-1})`.
pub fn veronese_map(n: usize) -> Result<HyperplaneMap> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Veronese map needs n >= 2, got {n}"
        )));
    }
    let k = (n - 1) as u32;
    let mut binom = num_bigint::BigInt::from(1);
    let mut comps = Vec::with_capacity(n);
    for j in 0..=k {
        // component j is C(k, j) u^(k-j) v^j
        let m = Monomial::new(vec![k - j, j])?;
        comps.push(Polynomial::from_monomial(
            m,
            Rational::from_integer(binom.clone()),
        ));
        binom = binom * (k - j) / (j + 1);
    }
    HyperplaneMap::new(comps, MapProvenance::Veronese { degree: k })
}

/// One component per term of `q ∈ H(2)`: the u-pure term first, the v-pure
/// term second, the rest in canonical order, then zero padding.
pub fn map_from_h2(q: &Polynomial, n: usize) -> Result<HyperplaneMap> {
    if q.n() != 2 {
        return Err(Error::VarCountMismatch {
            left: 2,
            right: q.n(),
        });
    }
    crate::classes::require_h(q)?;
    if q.num_terms() > n {
        return Err(Error::MapDoesNotFit {
            terms: q.num_terms(),
            vars: n,
        });
    }
    let is_u_pure = |m: &Monomial| m.exponents()[0] > 0 && m.exponents()[1] == 0;
    let is_v_pure = |m: &Monomial| m.exponents()[0] == 0 && m.exponents()[1] > 0;
    let term = |(m, c): (&Monomial, &Rational)| Polynomial::from_monomial(m.clone(), c.clone());
    let mut comps: Vec<Polynomial> = q.terms().filter(|(m, _)| is_u_pure(m)).map(term).collect();
    comps.extend(q.terms().filter(|(m, _)| is_v_pure(m)).map(term));
    comps.extend(
        q.terms()
            .filter(|(m, _)| !is_u_pure(m) && !is_v_pure(m))
            .map(term),
    );
    comps.resize(n, Polynomial::zero(2));
    let degree = q.degree().expect("members of H are nonzero");
    HyperplaneMap::new(comps, MapProvenance::FromH2 { degree })
}

/// `p(φ(u, v))`.
pub fn pullback(p: &Polynomial, map: &HyperplaneMap) -> Result<Polynomial> {
    if p.n() != map.arity() {
        return Err(Error::VarCountMismatch {
            left: p.n(),
            right: map.arity(),
        });
    }
    p.substitute(map.components())
}

fn check_groups(n: usize, groups: &[&[usize]]) -> Result<()> {
    let mut seen = vec![false; n];
    for g in groups {
        for &i in g.iter() {
            if i >= n {
                return Err(Error::InvalidPartition(format!(
                    "variable index {} out of range for {n} variables",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPartition(format!(
                    "variable {} appears twice",
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// The map `x_i = u/k` on `u_group`, `x_i = v/l` on `v_group`, zero elsewhere.
pub fn linear_map(n: usize, u_group: &[usize], v_group: &[usize]) -> Result<HyperplaneMap> {
    if u_group.is_empty() || v_group.is_empty() {
        return Err(Error::InvalidPartition(
            "both groups must be nonempty".into(),
        ));
    }
    check_groups(n, &[u_group, v_group])?;
    let u = Polynomial::var(2, 0).scale(&rat(1, u_group.len() as i64));
    let v = Polynomial::var(2, 1).scale(&rat(1, v_group.len() as i64));
    let comps = (0..n)
        .map(|i| {
            if u_group.contains(&i) {
                u.clone()
            } else if v_group.contains(&i) {
                v.clone()
            } else {
                Polynomial::zero(2)
            }
        })
        .collect();
    HyperplaneMap::new(
        comps,
        MapProvenance::Linear {
            u: u_group.to_vec(),
            v: v_group.to_vec(),
        },
    )
}

pub fn linear_collapse(p: &Polynomial, u_group: &[usize], v_group: &[usize]) -> Result<Polynomial> {
    pullback(p, &linear_map(p.n(), u_group, v_group)?)
}

/// `p` with the `pinned` variables set to `ξ/k`, the `kept` variables left
/// free and all others set to zero. The result has variables
/// `(ξ, kept[0], kept[1], ...)`.
pub fn restrict(p: &Polynomial, pinned: &[usize], kept: &[usize]) -> Result<Polynomial> {
    if pinned.is_empty() {
        return Err(Error::InvalidPartition("no pinned variables".into()));
    }
    check_groups(p.n(), &[pinned, kept])?;
    let m = kept.len() + 1;
    let xi = Polynomial::var(m, 0).scale(&rat(1, pinned.len() as i64));
    let images: Vec<Polynomial> = (0..p.n())
        .map(|i| {
            if pinned.contains(&i) {
                xi.clone()
            } else if let Some(pos) = kept.iter().position(|&k| k == i) {
                Polynomial::var(m, pos + 1)
            } else {
                Polynomial::zero(m)
            }
        })
        .collect();
    p.substitute(&images)
}

/// Produces a hyperplane map into `n` variables.
pub trait MapSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(&self, n: usize) -> Result<HyperplaneMap>;
}

struct Veronese;

impl MapSource for Veronese {
    fn name(&self) -> &'static str {
        "veronese"
    }

    fn build(&self, n: usize) -> Result<HyperplaneMap> {
        veronese_map(n)
    }
}

struct FromH2(Polynomial);

impl MapSource for FromH2 {
    fn name(&self) -> &'static str {
        "h2"
    }

    fn build(&self, n: usize) -> Result<HyperplaneMap> {
        map_from_h2(&self.0, n)
    }
}

struct Linear {
    u: Vec<usize>,
    v: Vec<usize>,
}

impl MapSource for Linear {
    fn name(&self) -> &'static str {
        "linear"
    }

    fn build(&self, n: usize) -> Result<HyperplaneMap> {
        linear_map(n, &self.u, &self.v)
    }
}

/// Parses `1,2/3`: one-based U group, slash, V group.
fn parse_linear_spec(spec: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let bad = || Error::InvalidPartition(format!("expected groups like `1,2/3`, got `{spec}`"));
    let (u, v) = spec.split_once('/').ok_or_else(bad)?;
    let group = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(bad()),
            })
            .collect()
    };
    Ok((group(u)?, group(v)?))
}

/// Sources keyed by name. The argument is the text after `name:`; for `h2`
/// it is the polynomial itself (text or JSON).
pub fn map_sources() -> Registry<dyn MapSource, String> {
    let mut reg: Registry<dyn MapSource, String> = Registry::new("map");
    reg.register("veronese", |_| Ok(Box::new(Veronese)));
    reg.register("h2", |arg| Ok(Box::new(FromH2(parse_any(arg, Some(2))?))));
    reg.register("linear", |arg| {
        let (u, v) = parse_linear_spec(arg)?;
        Ok(Box::new(Linear { u, v }))
    });
    reg
}
