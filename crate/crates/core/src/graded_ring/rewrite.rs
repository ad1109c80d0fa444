//! Finite rewrite systems on monomials of bounded degree.
//!
//! Each homogeneous relation becomes one rule `lead -> -(tail)/lc` under a
//! degree-lexicographic order. Normal forms are tabulated for every monomial
//! up to the top degree, and confluence is verified exhaustively: every
//! single rewrite step applicable to a monomial must lead to the same
//! tabulated normal form.

use std::collections::{BTreeMap, HashMap};

use crate::field::Field;

use super::monomial::{monomials_up_to, Monomial, MonomialOrder};

pub type Terms<F> = BTreeMap<Monomial, F>;

/// `acc += scale * terms`, dropping cancelled coefficients.
pub(crate) fn add_scaled<F: Field>(acc: &mut Terms<F>, terms: &Terms<F>, scale: &F) {
    for (m, c) in terms {
        let delta = c.mul(scale);
        match acc.get_mut(m) {
            Some(existing) => {
                *existing = existing.add(&delta);
                if existing.is_zero() {
                    acc.remove(m);
                }
            }
            None => {
                if !delta.is_zero() {
                    acc.insert(m.clone(), delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule<F> {
    pub lhs: Monomial,
    pub rhs: Terms<F>,
}

impl<F: Field> Rule<F> {
    /// Orient a nonzero relation so that its leading monomial is rewritten.
    fn from_relation(order: &MonomialOrder, relation: &Terms<F>) -> Option<Self> {
        let (lead, lc) = relation
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))?;
        let scale = lc.inv().neg();
        let rhs = relation
            .iter()
            .filter(|(m, _)| *m != lead)
            .map(|(m, c)| (m.clone(), c.mul(&scale)))
            .collect();
        Some(Rule { lhs: lead.clone(), rhs })
    }
}

#[derive(Clone, Debug)]
pub struct RewriteSystem<F> {
    weights: Vec<u32>,
    top_degree: u32,
    order: MonomialOrder,
    rules: Vec<Rule<F>>,
    normal_forms: HashMap<Monomial, Terms<F>>,
    /// Normal monomials indexed by degree.
    basis: Vec<Vec<Monomial>>,
}

impl<F: Field> RewriteSystem<F> {
    /// Build the system; on failure returns the smallest monomial at which two
    /// rewrite paths disagree.
    pub fn build(
        weights: &[u32],
        top_degree: u32,
        order: MonomialOrder,
        relations: &[Terms<F>],
    ) -> Result<Self, Monomial> {
        let rules: Vec<Rule<F>> = relations
            .iter()
            .filter_map(|r| Rule::from_relation(&order, r))
            .collect();

        let mut monomials = monomials_up_to(weights, top_degree);
        monomials.sort_by(|a, b| order.cmp(a, b));

        let mut normal_forms: HashMap<Monomial, Terms<F>> = HashMap::with_capacity(monomials.len());
        let mut basis = vec![Vec::new(); top_degree as usize + 1];
        for m in &monomials {
            let nf = match rules.iter().find_map(|r| m.checked_div(&r.lhs).map(|q| (r, q))) {
                Some((rule, quotient)) => rewrite_once(&normal_forms, rule, &quotient),
                None => {
                    basis[m.degree(weights) as usize].push(m.clone());
                    BTreeMap::from([(m.clone(), F::one())])
                }
            };
            normal_forms.insert(m.clone(), nf);
        }

        for m in &monomials {
            let expected = &normal_forms[m];
            for rule in &rules {
                if let Some(quotient) = m.checked_div(&rule.lhs) {
                    if &rewrite_once(&normal_forms, rule, &quotient) != expected {
                        return Err(m.clone());
                    }
                }
            }
        }

        Ok(RewriteSystem {
            weights: weights.to_vec(),
            top_degree,
            order,
            rules,
            normal_forms,
            basis,
        })
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule<F>] {
        &self.rules
    }

    pub fn basis(&self, degree: u32) -> &[Monomial] {
        self.basis.get(degree as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        m.degree(&self.weights) <= self.top_degree
            && self.basis[m.degree(&self.weights) as usize].contains(m)
    }

    pub fn normal_form(&self, m: &Monomial) -> Option<&Terms<F>> {
        self.normal_forms.get(m)
    }

    /// Linear normal form; monomials above the top degree are dropped.
    pub fn reduce(&self, terms: &Terms<F>) -> Terms<F> {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            if let Some(nf) = self.normal_forms.get(m) {
                add_scaled(&mut out, nf, c);
            }
        }
        out
    }

    /// Product of two normal-form polynomials, reduced and truncated.
    pub fn multiply(&self, a: &Terms<F>, b: &Terms<F>) -> Terms<F> {
        let mut out = BTreeMap::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m = ma.mul(mb);
                if let Some(nf) = self.normal_forms.get(&m) {
                    add_scaled(&mut out, nf, &ca.mul(cb));
                }
            }
        }
        out
    }
}

fn rewrite_once<F: Field>(
    table: &HashMap<Monomial, Terms<F>>,
    rule: &Rule<F>,
    quotient: &Monomial,
) -> Terms<F> {
    let mut out = BTreeMap::new();
    for (t, c) in &rule.rhs {
        let shifted = quotient.mul(t);
        let nf = table
            .get(&shifted)
            .expect("rewrite targets are smaller monomials of the same degree");
        add_scaled(&mut out, nf, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};

    fn rel(pairs: &[(&[u32], i64)]) -> Terms<Rational> {
        pairs
            .iter()
            .map(|(e, c)| (Monomial::from_exponents(e.to_vec()), int(*c)))
            .collect()
    }

    #[test]
    fn case_one_rules_under_declaration_order() {
        let order = MonomialOrder::new(vec![2, 2], vec![0, 1]);
        let sys = RewriteSystem::build(
            &[2, 2],
            4,
            order,
            &[rel(&[(&[2, 0], 1), (&[1, 1], 1)]), rel(&[(&[0, 2], 1)])],
        )
        .unwrap();
        assert_eq!(sys.basis(0).len(), 1);
        assert_eq!(sys.basis(2).len(), 2);
        assert_eq!(sys.basis(4), &[Monomial::from_exponents(vec![1, 1])]);
        let uu = sys.normal_form(&Monomial::from_exponents(vec![2, 0])).unwrap();
        assert_eq!(uu, &rel(&[(&[1, 1], -1)]));
    }

    #[test]
    fn overlapping_rules_are_detected() {
        // u^2 -> 0 and u^2 -> -v^2 disagree on u^2 itself.
        let order = MonomialOrder::new(vec![2, 2], vec![0, 1]);
        let err = RewriteSystem::build(
            &[2, 2],
            4,
            order,
            &[rel(&[(&[2, 0], 1)]), rel(&[(&[2, 0], 1), (&[0, 2], 1)])],
        )
        .unwrap_err();
        assert_eq!(err, Monomial::from_exponents(vec![2, 0]));
    }

    #[test]
    fn degree_two_relation_rewrites_products() {
        // u - v = 0 identifies the generators; u^2, uv and v^2 all collapse to v^2.
        let order = MonomialOrder::new(vec![2, 2], vec![0, 1]);
        let sys =
            RewriteSystem::build(&[2, 2], 4, order, &[rel(&[(&[1, 0], 1), (&[0, 1], -1)])])
                .unwrap();
        assert_eq!(sys.basis(2).len(), 1);
        assert_eq!(sys.basis(4), &[Monomial::from_exponents(vec![0, 2])]);
    }
}
