//! Simulate respondents who answer from the empirical partition lines, fit
//! lines back from their answers and print the fit report.
//!
//! cargo run --example plant_and_recover -- [subjects] [flip-noise] [seed]

use probphrase::io::report::fit_report;
use probphrase::{
    fit_selection_function, generate_tasks, simulate_responses, table1_function, Classifier,
    NoiseModel,
};

fn main() -> probphrase::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let subjects = args.first().and_then(|s| s.parse().ok()).unwrap_or(20);
    let epsilon: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let seed = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1);

    let truth = Classifier::from(table1_function());
    let sheets = generate_tasks(subjects, 40, seed)?;
    let data = simulate_responses(&sheets, &truth, NoiseModel::AdjacentFlip { epsilon }, seed)?;
    let fit = fit_selection_function(&data, 20)?;
    print!("{}", fit_report(&fit, None));
    Ok(())
}
