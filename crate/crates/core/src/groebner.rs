//! Buchberger's algorithm for homogeneous ideals with Gebauer–Möller pair pruning.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial, Variables};

/// A Gröbner basis in degrevlex order.
///
/// `complete` is set once every critical pair has been processed; the
/// generators are then reduced (monic, minimal lead terms, fully reduced tails).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis<E> {
    generators: Vec<Polynomial<E>>,
    complete: bool,
}

impl<E: Clone> GroebnerBasis<E> {
    pub fn generators(&self) -> &[Polynomial<E>] {
        &self.generators
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn order(&self) -> &'static str {
        "degrevlex"
    }

    /// Minimal monomial generators of the initial ideal.
    pub fn lead_term_ideal(&self) -> Vec<Monomial> {
        let mut lts: Vec<Monomial> = self
            .generators
            .iter()
            .filter_map(|g| g.lead_monomial().cloned())
            .collect();
        lts.sort();
        lts
    }

    /// Fully reduces `f`: no term of the result is divisible by a lead term.
    pub fn normal_form<K: Field<Elem = E>>(&self, field: &K, f: &Polynomial<E>) -> Polynomial<E> {
        reduce_fully(field, f, &self.generators)
    }

    pub fn contains<K: Field<Elem = E>>(&self, field: &K, f: &Polynomial<E>) -> bool {
        self.normal_form(field, f).is_zero()
    }
}

fn reduce_fully<K: Field>(field: &K, f: &Polynomial<K::Elem>, by: &[Polynomial<K::Elem>]) -> Polynomial<K::Elem> {
    let n = f.nvars();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, K::Elem)> = Vec::new();
    'outer: while let Some((m, c)) = rest.leading().cloned() {
        for g in by {
            let (lm, lc) = g.leading().expect("basis elements are nonzero");
            if lm.divides(&m) {
                let q = lm.quotient(&m);
                let factor = field.div(&c, lc);
                rest = rest
                    .sub(field, &g.mul_term(field, &factor, &q))
                    .expect("same variables");
                continue 'outer;
            }
        }
        done.push((m.clone(), c));
        rest = rest
            .sub(field, &Polynomial::term(field, rest.leading().unwrap().1.clone(), m))
            .expect("same variables");
    }
    Polynomial::from_terms(field, n, done)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Every generator must be homogeneous for the weights of `vars`; pairs are
/// processed by increasing degree of their lcm.
pub fn buchberger<K: Field>(field: &K, vars: &Variables, gens: &[Polynomial<K::Elem>]) -> Result<GroebnerBasis<K::Elem>> {
    for g in gens {
        if g.nvars() != vars.len() {
            return Err(Error::Structural(format!(
                "generator in {} variables, ring has {}",
                g.nvars(),
                vars.len()
            )));
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.fmt_with(field, vars)));
        }
    }
    let weights = vars.weights();
    let mut polys: Vec<Polynomial<K::Elem>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Polynomial<K::Elem>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| a.lead_monomial().cmp(&b.lead_monomial()));
    let mut queue = input.into_iter();

    loop {
        // Take the lowest-degree work item: either an input generator or an S-pair.
        pairs.sort_by(|a, b| b.lcm.cmp(&a.lcm));
        let next_input_deg = queue.as_slice().first().and_then(|g| g.homogeneous_degree());
        let next_pair_deg = pairs.last().map(|p| p.lcm.degree());
        let h = match (next_input_deg, next_pair_deg) {
            (None, None) => break,
            (Some(a), Some(b)) if b < a => s_poly(field, &polys, pairs.pop().unwrap()),
            (None, Some(_)) => s_poly(field, &polys, pairs.pop().unwrap()),
            _ => queue.next().unwrap(),
        };
        let active_polys: Vec<Polynomial<K::Elem>> = polys
            .iter()
            .zip(&active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.clone())
            .collect();
        let h = reduce_fully(field, &h, &active_polys);
        if h.is_zero() {
            continue;
        }
        let h = h.monic(field);
        update(&mut polys, &mut active, &mut pairs, h, weights);
    }

    // minimal basis, then interreduce
    let mut basis: Vec<Polynomial<K::Elem>> = Vec::new();
    let candidates: Vec<&Polynomial<K::Elem>> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
    for (k, g) in candidates.iter().enumerate() {
        let lm = g.lead_monomial().unwrap();
        let redundant = candidates.iter().enumerate().any(|(l, o)| {
            let om = o.lead_monomial().unwrap();
            l != k && om.divides(lm) && (om != lm || l < k)
        });
        if !redundant {
            basis.push((*g).clone());
        }
    }
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<Polynomial<K::Elem>> = basis
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, p)| p.clone())
            .collect();
        let (lm, lc) = basis[k].leading().unwrap().clone();
        let tail = basis[k]
            .sub(field, &Polynomial::term(field, lc, lm.clone()))
            .unwrap();
        let tail = reduce_fully(field, &tail, &others);
        let g = Polynomial::term(field, field.one(), lm).add(field, &tail).unwrap();
        reduced.push(g);
    }
    reduced.sort_by(|a, b| a.lead_monomial().cmp(&b.lead_monomial()));
    Ok(GroebnerBasis {
        generators: reduced,
        complete: true,
    })
}

fn s_poly<K: Field>(field: &K, polys: &[Polynomial<K::Elem>], p: Pair) -> Polynomial<K::Elem> {
    let (f, g) = (&polys[p.i], &polys[p.j]);
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let a = f.mul_term(field, &field.inv(fc), &fm.quotient(&p.lcm));
    let b = g.mul_term(field, &field.inv(gc), &gm.quotient(&p.lcm));
    a.sub(field, &b).unwrap()
}

/// Gebauer–Möller installation of a new basis element `h`.
fn update<E: Clone>(
    polys: &mut Vec<Polynomial<E>>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Polynomial<E>,
    weights: &[u32],
) {
    let hi = polys.len();
    let hm = h.lead_monomial().unwrap().clone();
    let lm = |i: usize, polys: &Vec<Polynomial<E>>| polys[i].lead_monomial().unwrap().clone();

    // new pairs (h, g) for active g, pruned sequentially
    let mut cands: Vec<(usize, Monomial, bool)> = (0..polys.len())
        .filter(|&g| active[g])
        .map(|g| {
            let gm = lm(g, polys);
            (g, hm.lcm(&gm, weights), hm.coprime(&gm))
        })
        .collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some((g, l, coprime)) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|(_, o, _)| o.divides(&l));
        if coprime || !dominated {
            kept.push((g, l, coprime));
        }
    }
    let mut fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|(_, _, coprime)| !coprime)
        .map(|(g, l, _)| Pair { i: g, j: hi, lcm: l })
        .collect();
    fresh.sort_by_key(|p| p.i);

    // criterion B on old pairs
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(&lm(p.i, polys), weights);
        let lj = hm.lcm(&lm(p.j, polys), weights);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(fresh);

    for (g, a) in active.iter_mut().enumerate() {
        if *a && hm.divides(&lm(g, polys)) {
            *a = false;
        }
    }
    polys.push(h);
    active.push(true);
}
