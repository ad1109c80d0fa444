use std::cmp::Ordering;

/// A commutative monomial, stored as one exponent per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn generator(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree given the generator degrees.
    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }

    /// `self / divisor` if `divisor` divides `self`.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&divisor.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

/// Degree-lexicographic order: weighted degree first, then exponents compared
/// lexicographically with generators visited in `priority` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<u32>,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(weights: Vec<u32>, priority: Vec<usize>) -> Self {
        debug_assert_eq!(weights.len(), priority.len());
        MonomialOrder { weights, priority }
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree(&self.weights)
            .cmp(&b.degree(&self.weights))
            .then_with(|| {
                self.priority
                    .iter()
                    .map(|&i| a.0[i].cmp(&b.0[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

/// Every monomial of weighted degree at most `max_degree`.
pub fn monomials_up_to(weights: &[u32], max_degree: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        match weights.split_first() {
            None => out.push(Monomial(prefix.clone())),
            Some((&w, rest)) => {
                let max_exp = budget / w;
                for e in 0..=max_exp {
                    prefix.push(e);
                    go(rest, budget - e * w, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, max_degree, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}
