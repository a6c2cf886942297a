use super::monomial::LieMonomial;

/// All Lyndon words of length exactly `n` over `{1, ..., k}`, in lexicographic
/// order (Duval's generation algorithm).
pub fn lyndon_words(k: u16, n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    // zero-based letters, -1 as the initial sentinel
    let mut w: Vec<i32> = vec![-1];
    while let Some(last) = w.last_mut() {
        *last += 1;
        let m = w.len();
        if m == n {
            out.push(w.iter().map(|&c| c as u16 + 1).collect());
        }
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(i32::from(k) - 1)) {
            w.pop();
        }
    }
    out
}

pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|r| w < &rotate(w, r)[..])
}

fn rotate(w: &[u16], r: usize) -> Vec<u16> {
    w[r..].iter().chain(&w[..r]).copied().collect()
}

/// Standard bracketing: `P(a) = e_a`, and `P(uv) = [P(u), P(v)]` where `v` is
/// the longest proper suffix of `w` that is a Lyndon word.
pub fn standard_bracketing(w: &[u16]) -> LieMonomial {
    debug_assert!(is_lyndon(w));
    if w.len() == 1 {
        return LieMonomial::leaf(w[0]);
    }
    let split = (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .expect("a single letter is always a Lyndon suffix");
    LieMonomial::bracket(
        standard_bracketing(&w[..split]),
        standard_bracketing(&w[split..]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_alphabets() {
        assert_eq!(lyndon_words(2, 2), vec![vec![1, 2]]);
        assert_eq!(lyndon_words(2, 3), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(lyndon_words(4, 3).len(), 20);
        assert!(lyndon_words(1, 3).is_empty());
        assert_eq!(lyndon_words(3, 1).len(), 3);
    }

    #[test]
    fn generated_words_are_lyndon_and_sorted() {
        let ws = lyndon_words(3, 5);
        assert!(ws.iter().all(|w| is_lyndon(w)));
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn bracketing_shape() {
        let m = standard_bracketing(&[1, 1, 2]);
        assert_eq!(m.to_string(), "[e1,[e1,e2]]");
        let m = standard_bracketing(&[1, 2, 2]);
        assert_eq!(m.to_string(), "[[e1,e2],e2]");
    }
}
