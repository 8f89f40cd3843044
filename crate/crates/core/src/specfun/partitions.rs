//! Integer partitions weighted for the multinomial expansion of a product of
//! exchangeable expectations.

/// One partition `λ ⊢ j` with the counts needed to collapse
/// `Σ_{i_1 + … + i_M = j} j! / ∏ i_k! · ∏ E_{i_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    /// Non-zero parts in non-increasing order.
    pub parts: Vec<u32>,
    /// Number of ordered placements of the parts into the `M` slots:
    /// `M! / ((M - k)! ∏ multiplicity!)` with `k` parts.
    pub arrangement_count: u128,
    /// `j! / ∏ part!`.
    pub multinomial_weight: u128,
}

/// All partitions of `j` into at most `slots` parts, in reverse lexicographic
/// order, with their weights. Counts saturate at `u128::MAX`, which only
/// happens far beyond any practical `j`.
pub fn enumerate_weighted_partitions(j: u32, slots: usize) -> Vec<PartitionTerm> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    recurse(j, j, slots, &mut current, &mut |parts| {
        out.push(PartitionTerm {
            parts: parts.to_vec(),
            arrangement_count: arrangement_count(parts, slots),
            multinomial_weight: multinomial(j, parts),
        });
    });
    out
}

fn recurse(
    remaining: u32,
    max_part: u32,
    slots: usize,
    current: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remaining == 0 {
        emit(current);
        return;
    }
    if current.len() == slots {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        recurse(remaining - part, part, slots, current, emit);
        current.pop();
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn multinomial(j: u32, parts: &[u32]) -> u128 {
    let mut left = j;
    let mut acc: u128 = 1;
    for &p in parts {
        acc = acc.saturating_mul(binomial(left, p));
        left -= p;
    }
    acc
}

fn arrangement_count(parts: &[u32], slots: usize) -> u128 {
    // Choose which slots receive each distinct part value.
    let mut free = slots as u128;
    let mut acc: u128 = 1;
    let mut i = 0;
    while i < parts.len() {
        let mut run = 1;
        while i + run < parts.len() && parts[i + run] == parts[i] {
            run += 1;
        }
        let choose = binomial_u128(free, run as u128);
        acc = acc.saturating_mul(choose);
        free -= run as u128;
        i += run;
    }
    acc
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
