use std::collections::BTreeSet;

use super::{FiniteMonoid, FiniteMonoidError};

pub const MAX_ENUMERATION_ORDER: usize = 4;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn relabel(table: &[Vec<usize>], identity: usize, perm: &[usize]) -> (usize, Vec<Vec<usize>>) {
    let n = table.len();
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            out[perm[x]][perm[y]] = perm[table[x][y]];
        }
    }
    (perm[identity], out)
}

/// The lexicographically least `(identity, table)` over all relabelings, so
/// two monoids are isomorphic iff their canonical forms agree.
pub fn canonical_form(m: &FiniteMonoid) -> (usize, Vec<Vec<usize>>) {
    permutations(m.size())
        .iter()
        .map(|p| relabel(m.table(), m.identity_index(), p))
        .min()
        .expect("at least one permutation")
}

/// One representative per isomorphism class of monoids of order `n`, each
/// with identity `0`, in canonical form.
pub fn enumerate_monoids(n: usize) -> Result<Vec<FiniteMonoid>, FiniteMonoidError> {
    if n == 0 {
        return Err(FiniteMonoidError::Empty);
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(FiniteMonoidError::OrderTooLarge {
            requested: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    let perms = permutations(n);
    let mut classes: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut table: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| if x == 0 { y } else if y == 0 { x } else { 0 }).collect())
        .collect();
    let free: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    fill(&mut table, &free, 0, &mut |t| {
        if super::associativity_violation(t).is_some() {
            return;
        }
        // Relabelings that keep the identity at 0 suffice for the class key.
        let key = perms
            .iter()
            .filter(|p| p[0] == 0)
            .map(|p| relabel(t, 0, p).1)
            .min()
            .expect("identity permutation");
        classes.insert(key);
    });
    Ok(classes
        .into_iter()
        .map(|t| FiniteMonoid::validate(t, 0).expect("enumerated table is a monoid"))
        .collect())
}

fn fill(
    table: &mut Vec<Vec<usize>>,
    free: &[(usize, usize)],
    at: usize,
    visit: &mut dyn FnMut(&Vec<Vec<usize>>),
) {
    if at == free.len() {
        visit(table);
        return;
    }
    let n = table.len();
    let (x, y) = free[at];
    for v in 0..n {
        table[x][y] = v;
        fill(table, free, at + 1, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_monoids(1).unwrap().len(), 1);
        assert_eq!(enumerate_monoids(2).unwrap().len(), 2);
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let z4 = FiniteMonoid::multiplicative_mod(4);
        let (id, t) = relabel(z4.table(), 1, &[3, 0, 2, 1]);
        let moved = FiniteMonoid::validate(t, id).unwrap();
        assert_eq!(canonical_form(&z4), canonical_form(&moved));
        assert_ne!(
            canonical_form(&z4),
            canonical_form(&FiniteMonoid::cyclic_group(4))
        );
    }

    #[test]
    fn order_limit() {
        assert!(matches!(
            enumerate_monoids(5),
            Err(FiniteMonoidError::OrderTooLarge { requested: 5, .. })
        ));
    }
}
