//! BLEU by pairwise scanning of n-grams instead of hashing.

pub fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn grams<'a>(s: &[&'a str], n: usize) -> Vec<Vec<&'a str>> {
    if s.len() < n {
        return Vec::new();
    }
    (0..=s.len() - n).map(|i| s[i..i + n].to_vec()).collect()
}

fn occurrences(haystack: &[Vec<&str>], gram: &[&str]) -> usize {
    haystack.iter().filter(|g| g.as_slice() == gram).count()
}

/// Reference score computed by scanning.
pub fn naive_bleu(cands: &[&str], refs: &[&[&str]], max_order: usize) -> f64 {
    let mut matches = vec![0usize; max_order];
    let mut totals = vec![0usize; max_order];
    let (mut c_len, mut r_len) = (0usize, 0usize);
    for (cand, rs) in cands.iter().zip(refs) {
        let cand = words(cand);
        let rs: Vec<Vec<&str>> = rs.iter().map(|r| words(r)).collect();
        c_len += cand.len();
        let mut best = rs[0].len();
        for r in &rs {
            let (d, bd) = (r.len().abs_diff(cand.len()), best.abs_diff(cand.len()));
            if d < bd || (d == bd && r.len() < best) {
                best = r.len();
            }
        }
        r_len += best;
        for n in 1..=max_order {
            let cg = grams(&cand, n);
            totals[n - 1] += cg.len();
            let mut seen: Vec<Vec<&str>> = Vec::new();
            for g in &cg {
                if seen.contains(g) {
                    continue;
                }
                seen.push(g.clone());
                let count = occurrences(&cg, g);
                let max_ref = rs
                    .iter()
                    .map(|r| occurrences(&grams(r, n), g))
                    .max()
                    .unwrap();
                matches[n - 1] += count.min(max_ref);
            }
        }
    }
    let order = (1..=max_order).filter(|&n| totals[n - 1] > 0).count();
    if (0..order).any(|i| matches[i] == 0) {
        return 0.0;
    }
    let bp = if c_len > r_len {
        1.0
    } else {
        (1.0 - r_len as f64 / c_len as f64).exp()
    };
    let mut log_sum = 0.0;
    for i in 0..order {
        log_sum += (matches[i] as f64 / totals[i] as f64).ln();
    }
    bp * (log_sum / order as f64).exp()
}
