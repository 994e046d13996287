use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::op_x;
use crate::classes::{is_subpolynomial, top_monomials};
use crate::error::{Error, Result};
use crate::poly::{rat, Polynomial, PolynomialDocument, Rational};
use crate::registry::Registry;

/// Steps `u_1..u_d` with `g_0 = 1` and `g_j = g_{j-1} - u_j + s u_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhitneyChain {
    n: usize,
    steps: Vec<Polynomial>,
    realized: Vec<Polynomial>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDocument {
    pub vars: usize,
    pub steps: Vec<PolynomialDocument>,
}

impl WhitneyChain {
    /// Replays `steps` from 1, checking every chain condition.
    pub fn from_steps(n: usize, steps: Vec<Polynomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        let mut realized = vec![Polynomial::one(n)];
        for (j, u) in steps.iter().enumerate() {
            let step = j + 1;
            let g = &realized[j];
            if u.n() != n {
                return Err(Error::VarCountMismatch {
                    left: n,
                    right: u.n(),
                });
            }
            if !is_subpolynomial(u, g)? {
                return Err(Error::InvalidChainStep {
                    step,
                    detail: format!("{u} is not a subpolynomial of {g}"),
                });
            }
            let next = op_x(g, u)?;
            if next.degree() != Some(step as u32) {
                return Err(Error::InvalidChainStep {
                    step,
                    detail: format!("result {next} does not have degree {step}"),
                });
            }
            realized.push(next);
        }
        Ok(WhitneyChain { n, steps, realized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Polynomial] {
        &self.steps
    }

    /// `g_0, ..., g_d`.
    pub fn realized(&self) -> &[Polynomial] {
        &self.realized
    }

    pub fn result(&self) -> &Polynomial {
        self.realized.last().expect("g_0 always present")
    }

    pub fn to_document(&self) -> ChainDocument {
        ChainDocument {
            vars: self.n,
            steps: self.steps.iter().map(Into::into).collect(),
        }
    }

    pub fn from_document(doc: &ChainDocument) -> Result<Self> {
        let steps = doc
            .steps
            .iter()
            .map(|s| s.to_polynomial())
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(doc.vars, steps)
    }
}

/// Chooses the next W step for a chain under construction.
pub trait ChainStrategy: Send {
    fn name(&self) -> &'static str;

    /// Step applied to `current`, which has degree `level`.
    fn next_step(&mut self, current: &Polynomial, level: usize) -> Result<Polynomial>;
}

/// The whole coefficient of the canonically last top-degree monomial.
#[derive(Clone, Debug, Default)]
pub struct LastMonomial;

impl ChainStrategy for LastMonomial {
    fn name(&self) -> &'static str {
        "last-monomial"
    }

    fn next_step(&mut self, current: &Polynomial, _level: usize) -> Result<Polynomial> {
        let tops = top_monomials(current);
        let last = tops.last().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial::from_monomial(last.clone(), current.coeff(last)))
    }
}

/// Seeded random subpolynomials: a nonempty share of the top part plus,
/// sometimes, a share of one lower term.
#[derive(Clone, Debug)]
pub struct RandomSteps {
    rng: ChaCha8Rng,
}

impl RandomSteps {
    pub fn new(seed: u64) -> Self {
        RandomSteps {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn fraction(&mut self) -> Rational {
        rat(self.rng.gen_range(1..=4), 4)
    }
}

impl ChainStrategy for RandomSteps {
    fn name(&self) -> &'static str {
        "random"
    }

    fn next_step(&mut self, current: &Polynomial, _level: usize) -> Result<Polynomial> {
        let tops = top_monomials(current);
        if tops.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let n = current.n();
        let mut u = Polynomial::zero(n);
        let chosen = self.rng.gen_range(1..=tops.len());
        for m in tops.choose_multiple(&mut self.rng, chosen) {
            let f = self.fraction();
            u = &u + &Polynomial::from_monomial(m.clone(), current.coeff(m) * f);
        }
        let lower: Vec<_> = current
            .monomials()
            .filter(|m| !tops.contains(m))
            .cloned()
            .collect();
        if !lower.is_empty() && self.rng.gen_bool(0.4) {
            let m = lower.choose(&mut self.rng).expect("nonempty");
            let f = self.fraction();
            u = &u + &Polynomial::from_monomial(m.clone(), current.coeff(m) * f);
        }
        Ok(u)
    }
}

/// Replays a fixed list of steps.
#[derive(Clone, Debug)]
pub struct Scripted {
    steps: Vec<Polynomial>,
}

impl Scripted {
    pub fn new(steps: Vec<Polynomial>) -> Self {
        Scripted { steps }
    }
}

impl ChainStrategy for Scripted {
    fn name(&self) -> &'static str {
        "scripted"
    }

    fn next_step(&mut self, _current: &Polynomial, level: usize) -> Result<Polynomial> {
        self.steps
            .get(level)
            .cloned()
            .ok_or_else(|| Error::InvalidChainStep {
                step: level + 1,
                detail: format!("script has only {} steps", self.steps.len()),
            })
    }
}

#[derive(Clone, Debug, Default)]
pub struct StrategyParams {
    pub seed: u64,
    pub script: Vec<Polynomial>,
}

pub fn chain_strategies() -> Registry<dyn ChainStrategy, StrategyParams> {
    let mut reg: Registry<dyn ChainStrategy, StrategyParams> = Registry::new("chain strategy");
    reg.register("last-monomial", |_| Ok(Box::new(LastMonomial)));
    reg.register("random", |p| Ok(Box::new(RandomSteps::new(p.seed))));
    reg.register("scripted", |p| {
        Ok(Box::new(Scripted::new(p.script.clone())))
    });
    reg
}

/// Builds a chain of length `d` from 1 in `n` variables.
pub fn whitney_chain(n: usize, d: u32, strategy: &mut dyn ChainStrategy) -> Result<WhitneyChain> {
    if n == 0 {
        return Err(Error::NoVariables);
    }
    let mut g = Polynomial::one(n);
    let mut steps = Vec::with_capacity(d as usize);
    for level in 0..d as usize {
        let u = strategy.next_step(&g, level)?;
        if u.is_zero() || u.degree() != Some(level as u32) {
            return Err(Error::InvalidChainStep {
                step: level + 1,
                detail: format!("step {u} must have degree {level}"),
            });
        }
        if !is_subpolynomial(&u, &g)? {
            return Err(Error::InvalidChainStep {
                step: level + 1,
                detail: format!("{u} is not a subpolynomial of {g}"),
            });
        }
        g = op_x(&g, &u)?;
        steps.push(u);
    }
    WhitneyChain::from_steps(n, steps)
}
