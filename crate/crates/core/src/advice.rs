//! Discrete advice tokens and advice algorithms.
//!
//! An advice algorithm is a family of algorithms indexed by a finite advice
//! set; the caller supplies the index that describes the input.

use std::fmt;

use crate::error::{Error, Result};
use crate::name::Fuel;
use crate::rational::Rational;
use crate::search::BoundStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Integrality {
    IsInteger,
    NotInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntermedAdvice {
    /// A rational zero of the function.
    Rational(Rational),
    /// The zero set has empty interior.
    Isolated,
}

#[derive(Clone)]
pub enum AdviceToken {
    BoundedInt { value: i64, range: std::ops::RangeInclusive<i64> },
    Parity(Parity),
    Integrality(Integrality),
    Bit { position: u32, value: bool },
    Intermed(IntermedAdvice),
    UpperBound(BoundStream),
    LowerBound(BoundStream),
}

impl AdviceToken {
    pub fn bounded(value: i64, range: std::ops::RangeInclusive<i64>) -> Result<Self> {
        if !range.contains(&value) {
            return Err(Error::input(format!("advice {value} outside its range {}..={}", range.start(), range.end())));
        }
        Ok(AdviceToken::BoundedInt { value, range })
    }
}

impl fmt::Debug for AdviceToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdviceToken::BoundedInt { value, range } => write!(f, "BoundedInt({value} in {range:?})"),
            AdviceToken::Parity(p) => write!(f, "{p:?}"),
            AdviceToken::Integrality(i) => write!(f, "{i:?}"),
            AdviceToken::Bit { position, value } => write!(f, "Bit(b_{position} = {})", *value as u8),
            AdviceToken::Intermed(a) => write!(f, "{a:?}"),
            AdviceToken::UpperBound(s) => write!(f, "Upper{s:?}"),
            AdviceToken::LowerBound(s) => write!(f, "Lower{s:?}"),
        }
    }
}

/// Algorithm consuming an input plus one value of a finite advice set.
pub trait AdviceAlgorithm {
    type Input;
    type Output;
    type Advice: Clone;

    fn advice_set(&self) -> Vec<Self::Advice>;

    fn run(&self, input: &Self::Input, advice: &Self::Advice, fuel: &Fuel) -> Result<Self::Output>;

    fn advice_count(&self) -> usize {
        self.advice_set().len()
    }
}

type RunFn<I, O, A> = dyn Fn(&I, &A, &Fuel) -> Result<O> + Send + Sync;

/// Advice algorithm from a closure and an explicit advice set.
pub struct AdviceFn<I, O, A> {
    advice: Vec<A>,
    run: Box<RunFn<I, O, A>>,
}

impl<I, O, A> AdviceFn<I, O, A> {
    pub fn new(advice: Vec<A>, run: impl Fn(&I, &A, &Fuel) -> Result<O> + Send + Sync + 'static) -> Self {
        AdviceFn { advice, run: Box::new(run) }
    }
}

impl<I, O, A: Clone> AdviceAlgorithm for AdviceFn<I, O, A> {
    type Input = I;
    type Output = O;
    type Advice = A;

    fn advice_set(&self) -> Vec<A> {
        self.advice.clone()
    }

    fn run(&self, input: &I, advice: &A, fuel: &Fuel) -> Result<O> {
        (self.run)(input, advice, fuel)
    }
}

/// `g` after `f`, advised by pairs `(i, j)`.
pub struct Composed<F, G> {
    first: F,
    second: G,
}

pub fn compose_advice<F, G>(first: F, second: G) -> Composed<F, G>
where
    F: AdviceAlgorithm,
    G: AdviceAlgorithm<Input = F::Output>,
{
    Composed { first, second }
}

impl<F, G> AdviceAlgorithm for Composed<F, G>
where
    F: AdviceAlgorithm,
    G: AdviceAlgorithm<Input = F::Output>,
{
    type Input = F::Input;
    type Output = G::Output;
    type Advice = (F::Advice, G::Advice);

    fn advice_set(&self) -> Vec<Self::Advice> {
        let inner = self.second.advice_set();
        self.first.advice_set().into_iter().flat_map(|i| inner.iter().map(move |j| (i.clone(), j.clone()))).collect()
    }

    fn run(&self, input: &F::Input, advice: &Self::Advice, fuel: &Fuel) -> Result<G::Output> {
        let mid = self.first.run(input, &advice.0, fuel)?;
        self.second.run(&mid, &advice.1, fuel)
    }
}
