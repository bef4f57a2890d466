//! The Littlewood–Richardson rule.
//!
//! `σ_λ · σ_μ = Σ_ν c^ν_{λμ} σ_ν` where `c^ν_{λμ}` counts the
//! Littlewood–Richardson skew tableaux of shape `ν/λ` and content `μ`:
//! chains of horizontal strips (one per part of `μ`, filled with that part's
//! letter) whose reverse reading word — rows top to bottom, each row right
//! to left — is a ballot word. Semistandardness is automatic for such
//! chains, so only the ballot condition is checked explicitly.
//!
//! Products are truncated to a `rows x cols` box, which is sound to do
//! during enumeration because shapes only grow. Results are memoized in a
//! process-global table keyed by `(rows, cols, λ, μ)`; concurrent readers
//! are fine and concurrent writers idempotently store the same value. The
//! table can be persisted between runs, see [`super::lr_cache`].

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::partition::Partition;

/// Memo key: box dimensions and the two factors in canonical order.
pub(crate) type LrKey = (u32, u32, Partition, Partition);

/// A product expansion: the distinct `ν` with their multiplicities.
pub(crate) type LrExpansion = Arc<Vec<(Partition, u64)>>;

fn memo() -> &'static RwLock<HashMap<LrKey, LrExpansion>> {
    static MEMO: OnceLock<RwLock<HashMap<LrKey, LrExpansion>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn canonical_key(lambda: &Partition, mu: &Partition, rows: u32, cols: u32) -> LrKey {
    if lambda <= mu {
        (rows, cols, lambda.clone(), mu.clone())
    } else {
        (rows, cols, mu.clone(), lambda.clone())
    }
}

/// Expands `σ_λ · σ_μ` inside the `rows x cols` box, discarding every `ν`
/// that escapes it.
pub fn lr_product(lambda: &Partition, mu: &Partition, rows: u32, cols: u32) -> LrExpansion {
    debug_assert!(lambda.fits_in(rows, cols) && mu.fits_in(rows, cols));
    let key = canonical_key(lambda, mu, rows, cols);
    if let Some(hit) = memo().read().expect("lr memo poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let value: LrExpansion = Arc::new(expand(&key.2, &key.3, rows, cols));
    let mut table = memo().write().expect("lr memo poisoned");
    Arc::clone(table.entry(key).or_insert(value))
}

/// Snapshot of every memoized expansion, for persistence.
pub(crate) fn memo_snapshot() -> Vec<(LrKey, Vec<(Partition, u64)>)> {
    let table = memo().read().expect("lr memo poisoned");
    let mut entries: Vec<_> = table
        .iter()
        .map(|(k, v)| (k.clone(), v.as_ref().clone()))
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries
}

/// Seeds the memo with previously computed expansions.
pub(crate) fn memo_preload(entries: Vec<(LrKey, Vec<(Partition, u64)>)>) {
    let mut table = memo().write().expect("lr memo poisoned");
    for (key, value) in entries {
        table.entry(key).or_insert_with(|| Arc::new(value));
    }
}

/// Direct enumeration of Littlewood–Richardson fillings.
fn expand(lambda: &Partition, mu: &Partition, rows: u32, cols: u32) -> Vec<(Partition, u64)> {
    let mut counts: HashMap<Partition, u64> = HashMap::new();
    if !lambda.fits_in(rows, cols) || !mu.fits_in(rows, cols) {
        return Vec::new();
    }
    let mut shape: Vec<u32> = (0..rows as usize).map(|r| lambda.part(r)).collect();
    let mut cells: Vec<(u32, u32, u32)> = Vec::new();
    add_strip(&mut shape, mu.parts(), 0, cols, &mut cells, &mut counts);
    let mut out: Vec<(Partition, u64)> = counts.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Adds the horizontal strip for `mu[strip]` in all admissible ways, then
/// recurses on the next strip; complete fillings pass the ballot check
/// before being counted.
fn add_strip(
    shape: &mut Vec<u32>,
    mu: &[u32],
    strip: usize,
    cols: u32,
    cells: &mut Vec<(u32, u32, u32)>,
    counts: &mut HashMap<Partition, u64>,
) {
    if strip == mu.len() {
        if is_ballot(cells) {
            *counts.entry(Partition::new(shape.clone())).or_insert(0) += 1;
        }
        return;
    }
    let base = shape.clone();
    let letter = strip as u32 + 1;
    distribute(
        shape, &base, 0, mu[strip], letter, cols, cells, mu, strip, counts,
    );
}

/// Chooses how many strip cells land in each row, top to bottom. Row `r` can
/// grow to at most `base[r-1]` (no two strip cells share a column), or to
/// `cols` in the first row.
#[allow(clippy::too_many_arguments)]
fn distribute(
    shape: &mut Vec<u32>,
    base: &[u32],
    row: usize,
    remaining: u32,
    letter: u32,
    cols: u32,
    cells: &mut Vec<(u32, u32, u32)>,
    mu: &[u32],
    strip: usize,
    counts: &mut HashMap<Partition, u64>,
) {
    if remaining == 0 {
        add_strip(shape, mu, strip + 1, cols, cells, counts);
        return;
    }
    if row == shape.len() {
        return;
    }
    let cap = if row == 0 { cols } else { base[row - 1] };
    let max_add = cap.saturating_sub(base[row]).min(remaining);
    for add in 0..=max_add {
        if add > 0 {
            for c in base[row] + 1..=base[row] + add {
                cells.push((row as u32, c, letter));
            }
            shape[row] = base[row] + add;
        }
        distribute(
            shape,
            base,
            row + 1,
            remaining - add,
            letter,
            cols,
            cells,
            mu,
            strip,
            counts,
        );
        if add > 0 {
            cells.truncate(cells.len() - add as usize);
            shape[row] = base[row];
        }
    }
}

/// Ballot (lattice) condition on the reverse reading word: scanning rows top
/// to bottom and each row right to left, every prefix contains at least as
/// many `i` as `i+1`.
fn is_ballot(cells: &[(u32, u32, u32)]) -> bool {
    let mut word: Vec<_> = cells.to_vec();
    word.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let max_letter = word.iter().map(|&(_, _, l)| l).max().unwrap_or(0);
    let mut seen = vec![0i64; max_letter as usize + 1];
    for &(_, _, letter) in &word {
        seen[letter as usize] += 1;
        if letter >= 2 && seen[letter as usize] > seen[letter as usize - 1] {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::Rational;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// A box too large to truncate anything of the given total weight.
    fn free_box(lambda: &Partition, mu: &Partition) -> (u32, u32) {
        let w = lambda.weight() + mu.weight();
        (w.max(1), w.max(1))
    }

    #[test]
    fn pieri_rules_in_small_grassmannians() {
        // Gr(2,4): σ1·σ1 = σ2 + σ11
        let r = lr_product(&p(&[1]), &p(&[1]), 2, 2);
        assert_eq!(r.as_ref(), &vec![(p(&[1, 1]), 1), (p(&[2]), 1)]);
        // Gr(2,4): σ2·σ2 = σ22, the point class
        let r = lr_product(&p(&[2]), &p(&[2]), 2, 2);
        assert_eq!(r.as_ref(), &vec![(p(&[2, 2]), 1)]);
        // box truncation: σ2·σ11 = 0 in Gr(2,4)
        let r = lr_product(&p(&[2]), &p(&[1, 1]), 2, 2);
        assert!(r.is_empty());
    }

    #[test]
    fn untruncated_products_match_symmetric_function_identities() {
        // s_21 · s_21 in the full ring: the famous expansion with c = 2 at (3,2,1)
        let a = p(&[2, 1]);
        let (rows, cols) = free_box(&a, &a);
        let r = lr_product(&a, &a, rows, cols);
        let get = |nu: &Partition| {
            r.iter()
                .find(|(v, _)| v == nu)
                .map(|(_, c)| *c)
                .unwrap_or(0)
        };
        assert_eq!(get(&p(&[4, 2])), 1);
        assert_eq!(get(&p(&[3, 2, 1])), 2);
        assert_eq!(get(&p(&[2, 2, 1, 1])), 1);
        assert_eq!(get(&p(&[4, 1, 1])), 1);
        assert_eq!(get(&p(&[3, 3])), 1);
        assert_eq!(get(&p(&[3, 1, 1, 1])), 1);
        assert_eq!(get(&p(&[2, 2, 2])), 1);
        // total multiplicity: s_21 ⊗ s_21 decomposes with Σ c^ν = 8
        let total: u64 = r.iter().map(|(_, c)| *c).sum();
        assert_eq!(total, 8);
    }

    /// Schur polynomial via the bialternant formula, exact over the
    /// rationals: s_λ(x) = det(x_i^{λ_j + m - j}) / det(x_i^{m - j}).
    fn schur_eval(lambda: &Partition, xs: &[Rational]) -> Rational {
        let m = xs.len();
        assert!(lambda.len() <= m);
        let numer: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| xs[i].pow(lambda.part(j) + (m - 1 - j) as u32))
                    .collect()
            })
            .collect();
        let denom: Vec<Vec<Rational>> = (0..m)
            .map(|i| (0..m).map(|j| xs[i].pow((m - 1 - j) as u32)).collect())
            .collect();
        determinant(numer) / determinant(denom)
    }

    fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
        let n = m.len();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero());
            let Some(pivot) = pivot else {
                return Rational::zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            let lead = m[col][col].clone();
            det *= lead.clone();
            let pivot_row = m[col].clone();
            for row in m.iter_mut().skip(col + 1) {
                let factor = &row[col] / &lead;
                for (c, pv) in pivot_row.iter().enumerate().skip(col) {
                    let sub = &factor * pv;
                    row[c] = &row[c] - &sub;
                }
            }
        }
        det
    }

    #[test]
    fn products_verified_against_schur_polynomial_oracle() {
        // Independent oracle: evaluate both sides of σ_λ σ_μ = Σ c^ν σ_ν at
        // random rational points, with enough variables to be faithful.
        let mut rng = StdRng::seed_from_u64(0x5eed_1001);
        let shapes = [
            p(&[1]),
            p(&[2]),
            p(&[1, 1]),
            p(&[2, 1]),
            p(&[2, 2]),
            p(&[3, 1]),
        ];
        for _ in 0..8 {
            let lambda = &shapes[rng.gen_range(0..shapes.len())];
            let mu = &shapes[rng.gen_range(0..shapes.len())];
            let m = (lambda.weight() + mu.weight()) as usize;
            let xs: Vec<Rational> = (0..m)
                .map(|i| Rational::new(rng.gen_range(1..=12) + 13 * i as i64, 1))
                .collect();
            let (rows, cols) = free_box(lambda, mu);
            let product = lr_product(lambda, mu, rows, cols);
            let lhs = schur_eval(lambda, &xs) * schur_eval(mu, &xs);
            let mut rhs = Rational::zero();
            for (nu, c) in product.iter() {
                rhs += Rational::from(*c) * schur_eval(nu, &xs);
            }
            assert_eq!(lhs, rhs, "λ = {lambda}, μ = {mu}");
        }
    }

    #[test]
    fn duality_pairing_on_boxes() {
        // ∫ σ_λ σ_μ = δ_{μ, complement(λ)}: the coefficient of the box
        // partition in σ_λ·σ_μ is 1 exactly when μ is the complement.
        for (rows, cols) in [(2u32, 2u32), (4, 2), (2, 3)] {
            let basis = Partition::all_in_box(rows, cols);
            let point = Partition::empty().complement_in(rows, cols);
            for a in &basis {
                for b in &basis {
                    let product = lr_product(a, b, rows, cols);
                    let top = product
                        .iter()
                        .find(|(v, _)| v == &point)
                        .map(|(_, c)| *c)
                        .unwrap_or(0);
                    let expected = u64::from(b == &a.complement_in(rows, cols));
                    assert_eq!(top, expected, "box {rows}x{cols}, λ={a}, μ={b}");
                }
            }
        }
    }

    #[test]
    fn memo_roundtrip() {
        let _ = lr_product(&p(&[2, 1]), &p(&[2, 1]), 4, 2);
        let snapshot = memo_snapshot();
        assert!(snapshot
            .iter()
            .any(|(k, _)| k.2 == p(&[2, 1]) && k.3 == p(&[2, 1])));
        // preload is idempotent: re-inserting a snapshot leaves every entry
        // in place (other tests may grow the shared memo concurrently, so
        // only containment is checked)
        memo_preload(snapshot.clone());
        let after = memo_snapshot();
        for entry in &snapshot {
            assert!(after.contains(entry));
        }
    }
}
