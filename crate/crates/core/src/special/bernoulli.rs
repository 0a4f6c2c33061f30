use std::sync::RwLock;

use rug::{Integer, Rational};

/// Exact Bernoulli numbers `B_0..=B_upto`, with `B_1 = −1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    pub fn get(&self, j: usize) -> Option<&Rational> {
        self.values.get(j)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0` for `m ≥ 1`.
fn extend(values: &mut Vec<Rational>, upto: usize) {
    if values.is_empty() {
        values.push(Rational::from(1));
    }
    while values.len() <= upto {
        let m = values.len();
        if m >= 3 && m % 2 == 1 {
            values.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (j, b) in values.iter().enumerate() {
            acc += Rational::from(&binom * b.numer()) / b.denom();
            binom *= (m + 1 - j) as u64;
            binom /= (j + 1) as u64;
        }
        values.push(-acc / (m as u64 + 1));
    }
}

pub fn bernoulli(upto: usize) -> BernoulliCache {
    let mut values = Vec::new();
    extend(&mut values, upto);
    BernoulliCache { values }
}

static SHARED: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_j` from a process-wide cache that grows on demand.
pub(crate) fn bernoulli_number(j: usize) -> Rational {
    if let Some(b) = SHARED.read().expect("bernoulli cache poisoned").get(j) {
        return b.clone();
    }
    let mut guard = SHARED.write().expect("bernoulli cache poisoned");
    extend(&mut guard, j.max(64));
    guard[j].clone()
}
