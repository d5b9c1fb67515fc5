//! All algebras on a small carrier, and isomorphism classes of them.

use std::collections::HashSet;

use super::{check_multiplication_axiom, enumerate_algebra_morphisms, Algebra};
use crate::error::{Error, Result};
use crate::finset::{checked_pow, for_each_tuple, Budget, Elem, FinMap, FinSet};
use crate::monads::MonadInstance;

/// Every algebra structure on `carrier`, in a fixed order.
///
/// Monads that know their algebras (semimodules) list them directly; for
/// the rest, `α` is fixed on the image of `η` and every remaining entry is
/// tried.
pub fn enumerate_algebras(t: &MonadInstance, carrier: &FinSet, budget: Budget) -> Result<Vec<Algebra>> {
    let c = carrier.size();
    let tc = t.obj(carrier)?;
    if let Some(tables) = t.raw().enumerate_algebras(c, budget) {
        return tables?
            .into_iter()
            .map(|table| Algebra::unchecked(t, carrier, FinMap::new(tc.clone(), carrier.clone(), table)?))
            .collect();
    }
    let n = budget.admit("T(carrier)", tc.size())?;
    let mut fixed: Vec<Option<Elem>> = vec![None; n];
    for x in 0..c {
        let ex = t.raw().unit(c, x) as usize;
        if fixed[ex].is_some() {
            // η is not injective here; no structure can satisfy the unit axiom
            return Ok(Vec::new());
        }
        fixed[ex] = Some(x);
    }
    let free: Vec<usize> = (0..n).filter(|&u| fixed[u].is_none()).collect();
    let count = checked_pow(c, free.len() as Elem).ok_or_else(|| Error::unrepresentable("candidate structures", budget.limit()))?;
    budget.admit("candidate structures", count)?;
    let mut out = Vec::new();
    let mut err = None;
    for_each_tuple(free.len(), c, |vals| {
        let mut table: Vec<Elem> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        for (&u, &v) in free.iter().zip(vals) {
            table[u] = v;
        }
        let alpha = FinMap::new(tc.clone(), carrier.clone(), table).expect("values lie in the carrier");
        match check_multiplication_axiom(t, carrier, &alpha, budget) {
            Ok(v) if v.is_pass() => out.push(Algebra::unchecked(t, carrier, alpha).expect("typed")),
            Ok(_) => {}
            Err(e) => {
                err = Some(e);
                return false;
            }
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Structure table transported along the permutation `p`.
fn transported(a: &Algebra, p: &[Elem], budget: Budget) -> Result<Vec<Elem>> {
    let c = a.size();
    let n = budget.admit("T(carrier)", a.monad().obj_size(c)?)?;
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y as usize] = x as Elem;
    }
    // p ∘ α ∘ T(p⁻¹)
    Ok((0..n as Elem).map(|u| p[a.eval(c, u, &|x| inv[x as usize]) as usize]).collect())
}

fn permutations(n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    let mut cur: Vec<Elem> = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<Elem>, used: &mut [bool], out: &mut Vec<Vec<Elem>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x as Elem);
                go(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// One algebra from each isomorphism class, keeping the first met.
pub fn iso_classes(algebras: &[Algebra], budget: Budget) -> Result<Vec<Algebra>> {
    let mut seen: HashSet<(Elem, Vec<Elem>)> = HashSet::new();
    let mut out = Vec::new();
    for a in algebras {
        let c = budget.admit("carrier", a.size())?;
        let perms = permutations(c);
        let mut canon: Option<Vec<Elem>> = None;
        for p in &perms {
            let table = transported(a, p, budget)?;
            if canon.as_ref().is_none_or(|best| table < *best) {
                canon = Some(table);
            }
        }
        if seen.insert((a.size(), canon.unwrap_or_default())) {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// An algebra isomorphism `α → β`, if there is one.
pub fn find_isomorphism(alpha: &Algebra, beta: &Algebra, budget: Budget) -> Result<Option<FinMap>> {
    if alpha.size() != beta.size() {
        return Ok(None);
    }
    Ok(enumerate_algebra_morphisms(alpha, beta, budget)?.into_iter().find(FinMap::is_bijective))
}
