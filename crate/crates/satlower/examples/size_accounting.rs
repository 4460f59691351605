//! Measured instance sizes next to their closed-form predictions, and
//! the quadratic scaling ratios across a small grid.

use satlower::formula::random_formula;
use satlower::pipeline::stats;

fn main() {
    println!(
        "{:>2} {:>3} {:>3} {:>8} {:>8} {:>8} {:>8} {:>8} e/(N s^2)",
        "n", "s", "N", "|P|", "|V|", "|E|", "|T1|", "|T2|"
    );
    for &n in &[2usize, 4, 6] {
        for &s in &[4usize, 8, 16] {
            let f = random_formula(n, s, 0).formula;
            let r = stats(&f);
            assert_eq!(r.pattern_len, r.pattern_len_predicted);
            assert_eq!(r.graph_v, r.graph_v_predicted);
            assert_eq!(r.graph_e, r.graph_e_predicted);
            assert_eq!(r.t_a_size, r.t_a_size_predicted);
            assert_eq!(r.t_b_size, r.t_b_size_predicted);
            let ratio = r.graph_e as f64 / (r.n_padded * s * s) as f64;
            println!(
                "{n:>2} {s:>3} {:>3} {:>8} {:>8} {:>8} {:>8} {:>8} {ratio:>8.2}",
                r.n_padded, r.pattern_len, r.graph_v, r.graph_e, r.t_a_size, r.t_b_size
            );
        }
    }
    println!("\nall measured counts equal their closed-form predictions");

    let r = stats(&random_formula(4, 8, 1).formula);
    println!("\nfull report for n=4 s=8 seed=1:\n{r}");
}
