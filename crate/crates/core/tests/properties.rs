use loopjones::algebra::{LaurentPoly, Var};
use loopjones::expansion::{loop_expansion, LoopOptions};
use loopjones::lawrence::{at_d_minus_one, lawrence_word, symmetric_burau, LawrenceRep};
use loopjones::quantum::null_space;
use loopjones::BraidWord;
use proptest::prelude::*;

fn letters(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..strands as i32, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, pos)| if pos { g } else { -g }).collect())
}

fn braid(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    letters(strands, max_len).prop_map(move |l| BraidWord::new(strands, l).unwrap())
}

fn trace(rep: &LawrenceRep, beta: &BraidWord) -> LaurentPoly {
    lawrence_word(rep, beta).unwrap().trace()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn braid_relation_inside_words(pre in letters(4, 3), post in letters(4, 3), i in 1..3i32, m in 1..=2usize) {
        let rep = LawrenceRep::new(4, m).unwrap();
        let with = |mid: [i32; 3]| {
            let l: Vec<i32> = pre.iter().chain(&mid).chain(&post).copied().collect();
            lawrence_word(&rep, &BraidWord::new(4, l).unwrap()).unwrap()
        };
        prop_assert_eq!(with([i, i + 1, i]), with([i + 1, i, i + 1]));
    }

    #[test]
    fn inverse_word_cancels(beta in braid(3, 6), m in 1..=2usize) {
        let rep = LawrenceRep::new(3, m).unwrap();
        let prod = lawrence_word(&rep, &beta.concat(&beta.inverse()).unwrap()).unwrap();
        prop_assert!(prod.is_identity());
    }

    #[test]
    fn lawrence_traces_are_conjugation_invariant(beta in braid(3, 5), gamma in braid(3, 3), m in 1..=3usize) {
        let rep = LawrenceRep::new(3, m).unwrap();
        prop_assert_eq!(trace(&rep, &beta), trace(&rep, &beta.conjugate_by(&gamma).unwrap()));
    }

    #[test]
    fn null_space_traces_are_conjugation_invariant(beta in braid(3, 4), gamma in braid(3, 2), m in 1..=2usize) {
        let null = null_space(3, m).unwrap();
        prop_assert_eq!(null.trace(&beta).unwrap(), null.trace(&beta.conjugate_by(&gamma).unwrap()).unwrap());
    }

    #[test]
    fn d_minus_one_is_symmetric_power(beta in braid(4, 4), m in 1..=3usize) {
        let rep = LawrenceRep::new(4, m).unwrap();
        prop_assert_eq!(at_d_minus_one(&lawrence_word(&rep, &beta).unwrap()), symmetric_burau(4, m, &beta).unwrap());
    }

    #[test]
    fn traces_at_x_one_d_minus_one_count_fixed_points(beta in braid(3, 5), m in 1..=2usize) {
        // at x = 1, d = -1 the Burau matrix is a permutation matrix, so the trace
        // of Sym^m counts multisets of size m fixed by the permutation
        let rep = LawrenceRep::new(3, m).unwrap();
        let mut t = trace(&rep, &beta);
        t = t.substitute(Var::X, &LaurentPoly::one()).unwrap();
        t = t.substitute(Var::D, &LaurentPoly::from_int(-1)).unwrap();
        let perm = beta.permutation();
        let mut cycles = [0usize; 4];
        let mut seen = [false; 3];
        for start in 0..3 {
            if !seen[start] {
                let mut len = 0;
                let mut k = start;
                while !seen[k] {
                    seen[k] = true;
                    k = perm[k];
                    len += 1;
                }
                cycles[len] += 1;
            }
        }
        // reduced Burau drops one trivial summand from the unreduced permutation action
        let fixed_reduced: i64 = cycles[1] as i64 - 1;
        let expected = match m {
            1 => fixed_reduced,
            _ => {
                // Sym^2 trace = (tr(P)^2 + tr(P^2)) / 2 on the reduced action
                let p2 = cycles[1] as i64 + 2 * cycles[2] as i64 - 1;
                (fixed_reduced * fixed_reduced + p2) / 2
            }
        };
        prop_assert_eq!(t, LaurentPoly::from_int(expected));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn loop_expansion_is_invariant_under_rotation(extra in prop::collection::vec(1..3i32, 0..3), shift in 0usize..6) {
        let l: Vec<i32> = [1, 2, 1, 2].into_iter().chain(extra).collect();
        let rotated: Vec<i32> = l[shift % l.len()..].iter().chain(&l[..shift % l.len()]).copied().collect();
        let beta = BraidWord::new(3, l).unwrap();
        prop_assume!(beta.closure_is_knot());
        let opts = LoopOptions { order: 1, cutoff: 12, max_cutoff: 12, floor: -24, cache: None };
        let a = loop_expansion(&beta, &opts).unwrap();
        let b = loop_expansion(&BraidWord::new(3, rotated).unwrap(), &opts).unwrap();
        for i in 0..=1 {
            prop_assert_eq!(a.v(i).exact_terms(), b.v(i).exact_terms());
        }
    }
}
