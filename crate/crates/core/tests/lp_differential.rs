use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use untangle::lp::{feasible, Solver, SolverOptions};
use untangle::oracle::{brute_force_feasible, random_system};

#[test]
fn solver_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..400 {
        let vars = rng.gen_range(1..=12);
        let rows = rng.gen_range(1..=vars.min(7));
        let sys = random_system(&mut rng, vars, rows);
        let got = feasible(&sys);
        let want = brute_force_feasible(&sys).unwrap();
        assert_eq!(got.feasible, want, "{}", sys.dump());
        if let Some(w) = &got.witness {
            assert!(sys.is_satisfied_by(w));
        }
        let exact = Solver::new(sys.clone(), SolverOptions { force_exact: true, ..Default::default() }).feasible();
        assert_eq!(exact.witness, got.witness);
        if want { yes += 1 } else { no += 1 }
    }
    assert!(yes > 50 && no > 50, "{yes} feasible / {no} infeasible");
}
