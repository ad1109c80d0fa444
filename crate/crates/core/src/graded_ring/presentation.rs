use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::{Gf2, Rational};

use super::error::RingError;
use super::monomial::{Monomial, MonomialOrder};
use super::rewrite::{RewriteSystem, Terms};

/// Permutations of the generator priority are searched only up to this many generators.
const MAX_ORDER_SEARCH: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// A graded quotient `Q[g_1, ..., g_n] / (relations)` truncated above
/// `top_degree`, together with the monomial that pairs to 1 with the
/// fundamental class.
///
/// Construction picks a degree-lexicographic order under which the rewrite
/// system is confluent. Among confluent orders the first one (declaration
/// order first) that keeps the orientation monomial in normal form wins, so
/// top-degree normal forms are written in terms of the orientation class.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    generators: Vec<Generator>,
    weights: Vec<u32>,
    relations: Vec<Terms<Rational>>,
    orientation: Monomial,
    top_degree: u32,
    system: RewriteSystem<Rational>,
    mod2: RewriteSystem<Gf2>,
    top_monomial: Monomial,
    /// Coefficient of `top_monomial` in the normal form of the orientation.
    orientation_scale: Rational,
}

impl PartialEq for RingPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.relations == other.relations
            && self.orientation == other.orientation
            && self.top_degree == other.top_degree
    }
}

impl RingPresentation {
    pub(crate) fn validate_generators(generators: &[Generator], top_degree: u32) -> Result<(), RingError> {
        if top_degree == 0 || top_degree % 2 == 1 {
            return Err(RingError::InvalidTopDegree(top_degree));
        }
        if generators.is_empty() {
            return Err(RingError::NoGenerators);
        }
        let mut seen = HashSet::new();
        for g in generators {
            if g.degree == 0 {
                return Err(RingError::ZeroDegree { name: g.name.clone() });
            }
            if g.degree % 2 == 1 {
                return Err(RingError::OddDegree { name: g.name.clone(), degree: g.degree });
            }
            if !seen.insert(g.name.as_str()) {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(())
    }

    /// Validate a presentation given relations with integer coefficients.
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<Terms<Rational>>,
        orientation: Monomial,
        top_degree: u32,
    ) -> Result<Self, RingError> {
        Self::validate_generators(&generators, top_degree)?;
        let weights: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(orientation.arity(), generators.len(), "orientation arity mismatch");

        let relations: Vec<Terms<Rational>> = relations.into_iter().filter(|r| !r.is_empty()).collect();
        for (index, r) in relations.iter().enumerate() {
            let describe = || format_terms(&names, r, false);
            let degrees: HashSet<u32> = r.keys().map(|m| m.degree(&weights)).collect();
            if degrees.len() > 1 {
                return Err(RingError::NonHomogeneous { index: index + 1, relation: describe() });
            }
            if r.values().any(|c| !c.is_integer()) {
                return Err(RingError::NonIntegralRelation { index: index + 1, relation: describe() });
            }
            let degree = *degrees.iter().next().expect("nonzero relation");
            if degree > top_degree {
                return Err(RingError::RelationAboveTop {
                    index: index + 1,
                    relation: describe(),
                    degree,
                    top: top_degree,
                });
            }
        }

        let orientation_degree = orientation.degree(&weights);
        if orientation_degree != top_degree {
            return Err(RingError::OrientationDegree { degree: orientation_degree, top: top_degree });
        }

        let system = choose_system(&weights, top_degree, &relations, &orientation).map_err(|m| {
            RingError::NonConfluent { monomial: format_monomial(&names, &m, false), mod2: false }
        })?;

        let top_basis = system.basis(top_degree);
        if top_basis.len() != 1 {
            return Err(RingError::TopRank { rank: top_basis.len() });
        }
        let top_monomial = top_basis[0].clone();
        let orientation_scale = system
            .normal_form(&orientation)
            .and_then(|nf| nf.get(&top_monomial).cloned())
            .unwrap_or_else(Rational::zero);
        if orientation_scale.is_zero() {
            return Err(RingError::DegenerateOrientation);
        }

        let mod2_relations: Vec<Terms<Gf2>> = relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(m, c)| (m.clone(), <Gf2 as crate::field::Field>::from_integer(c.numer())))
                    .filter(|(_, c)| c.0)
                    .collect::<Terms<Gf2>>()
            })
            .collect();
        let mod2 = RewriteSystem::build(&weights, top_degree, system.order().clone(), &mod2_relations)
            .map_err(|m| RingError::NonConfluent {
                monomial: format_monomial(&names, &m, false),
                mod2: true,
            })?;

        Ok(RingPresentation {
            generators,
            weights,
            relations,
            orientation,
            top_degree,
            system,
            mod2,
            top_monomial,
            orientation_scale,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub(crate) fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn relations(&self) -> &[Terms<Rational>] {
        &self.relations
    }

    pub fn orientation(&self) -> &Monomial {
        &self.orientation
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    /// Generator indices from highest to lowest priority in the chosen order.
    pub fn order_priority(&self) -> &[usize] {
        self.system.order().priority()
    }

    /// The oriented rewrite rules `lead -> tail`.
    pub fn rules(&self) -> impl Iterator<Item = (&Monomial, &Terms<Rational>)> {
        self.system.rules().iter().map(|r| (&r.lhs, &r.rhs))
    }

    /// Render a rule or relation tail in expression syntax or pretty form.
    pub fn format_terms(&self, terms: &Terms<Rational>, pretty: bool) -> String {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        format_terms(&names, self.sort_for_display(terms), pretty)
    }

    pub(crate) fn system(&self) -> &RewriteSystem<Rational> {
        &self.system
    }

    pub(crate) fn mod2_system(&self) -> &RewriteSystem<Gf2> {
        &self.mod2
    }

    /// Normal monomials of the given degree.
    pub fn basis(&self, degree: u32) -> &[Monomial] {
        self.system.basis(degree)
    }

    /// Ranks of the reduced monomial basis in degrees `0..=top_degree`.
    pub fn basis_ranks(&self) -> Vec<usize> {
        (0..=self.top_degree).map(|d| self.basis(d).len()).collect()
    }

    pub fn mod2_basis(&self, degree: u32) -> &[Monomial] {
        self.mod2.basis(degree)
    }

    /// The exhaustive confluence check already ran during construction; this
    /// reruns it over the chosen order.
    pub fn is_confluent(&self) -> bool {
        RewriteSystem::<Rational>::build(
            &self.weights,
            self.top_degree,
            self.system.order().clone(),
            &self.relations,
        )
        .is_ok()
    }

    /// Evaluate a top-degree normal form against the fundamental class.
    pub(crate) fn pair_terms(&self, terms: &Terms<Rational>) -> Rational {
        terms
            .get(&self.top_monomial)
            .map(|c| c / &self.orientation_scale)
            .unwrap_or_else(Rational::zero)
    }

    pub fn format_monomial(&self, m: &Monomial, pretty: bool) -> String {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        format_monomial(&names, m, pretty)
    }

    /// Display order: ascending degree, then generators in declaration order.
    pub(crate) fn sort_for_display<'a, C>(&self, terms: &'a Terms<C>) -> Vec<(&'a Monomial, &'a C)> {
        let mut v: Vec<_> = terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            a.degree(&self.weights)
                .cmp(&b.degree(&self.weights))
                .then_with(|| b.exponents().cmp(a.exponents()))
        });
        v
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.format_terms(r, false)).collect();
        writeln!(f, "generators: {}", gens.join(", "))?;
        writeln!(f, "relations: {}", rels.join(", "))?;
        writeln!(f, "orientation: {}", format_monomial(&names, &self.orientation, false))?;
        write!(f, "top_degree: {}", self.top_degree)
    }
}

fn choose_system(
    weights: &[u32],
    top_degree: u32,
    relations: &[Terms<Rational>],
    orientation: &Monomial,
) -> Result<RewriteSystem<Rational>, Monomial> {
    let n = weights.len();
    let identity: Vec<usize> = (0..n).collect();
    let candidates: Vec<Vec<usize>> = if n <= MAX_ORDER_SEARCH {
        permutations(n)
    } else {
        vec![identity]
    };

    let mut first_error = None;
    let mut fallback = None;
    for priority in candidates {
        let order = MonomialOrder::new(weights.to_vec(), priority);
        match RewriteSystem::build(weights, top_degree, order, relations) {
            Ok(system) if system.is_normal(orientation) => return Ok(system),
            Ok(system) => {
                fallback.get_or_insert(system);
            }
            Err(m) => {
                first_error.get_or_insert(m);
            }
        }
    }
    fallback.ok_or_else(|| first_error.expect("at least one order was tried"))
}

/// All permutations of `0..n` in lexicographic order, identity first.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).expect("pivot successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: u32) -> String {
    n.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).expect("decimal digit") as usize])
        .collect()
}

pub(crate) fn format_monomial(names: &[&str], m: &Monomial, pretty: bool) -> String {
    let factors: Vec<String> = m
        .exponents()
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(&e, name)| match (e, pretty) {
            (1, _) => name.to_string(),
            (_, true) => format!("{name}{}", superscript(e)),
            (_, false) => format!("{name}^{e}"),
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else if pretty {
        factors.concat()
    } else {
        factors.join("*")
    }
}

/// Render a linear combination. `pretty` uses `−`, `·` and superscripts;
/// otherwise the output is valid expression syntax.
pub(crate) fn format_terms<'a, I>(names: &[&str], terms: I, pretty: bool) -> String
where
    I: IntoIterator<Item = (&'a Monomial, &'a Rational)>,
{
    let (minus, times) = if pretty { ("−", "·") } else { ("-", "*") };
    let mut out = String::new();
    for (m, c) in terms {
        let negative = c < &Rational::zero();
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push_str(minus);
            }
        } else {
            out.push_str(if negative { " " } else { " + " });
            if negative {
                out.push_str(minus);
                out.push(' ');
            }
        }
        let coeff = crate::field::format_rational(&magnitude);
        if m.is_one() {
            out.push_str(&coeff);
        } else {
            if !magnitude.is_one() {
                out.push_str(&coeff);
                out.push_str(times);
            }
            out.push_str(&format_monomial(names, m, pretty));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
