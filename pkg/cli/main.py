"""
Name: main.py
Description: The trendlab command line: data generation, training, scoring, evaluation and benchmarks.
Author: Connor Kasarda
Date: 2025-06-09

Notes:
    Exit codes: 0 success, 1 usage or configuration error, 2 data error, 3 numeric failure.
    Every command prints a JSON RunReport to --report (stdout by default); log lines go to stderr.

Warning:
    Use at your own risk. The author is not responsible for any damages or losses incurred from using this code.
"""

import logging
import sys
import time
from dataclasses import asdict
from typing import Optional
import click
import typer
from common.errors import ConfigError, DataError, NumericError
from common.log import configure_logging, get_logger
from dataset.survival_dataset import SurvivalDataset
from alignment.windowing import extract_subtrajectories
from estimation.contrastive import survival_risk
from estimation.train_config import TrainConfig, TrainMode, read_train_config
from estimation.trainer import train
from evaluation.concordance import concordance_index
from evaluation.mann_kendall import mann_kendall
from parsing.csv_table_reader import CsvTableReader
from parsing.file_writer import format_real, write_lines, write_metadata, write_sequence_dataset, write_survival_dataset
from parsing.metadata_reader import metadata_path, read_metadata
from parsing.model_file import deserialize_model, serialize_model
from parsing.sequence_reader import read_sequence_dataset
from parsing.survival_reader import read_survival_dataset
from science.benchmarks import identifiability_benchmark, springs_benchmark
from science.noise_bench import DEFAULT_GRID, NoiseBenchmark
from science.survival_evaluation import cross_validate_survival, evaluate_survival
from science.trend_evaluation import evaluate_trend, sequence_scores
from synthesis.ball_springs import BallSpringsSimulator, SpringsConfig
from synthesis.contamination import ContaminationParams, contaminate, label_flip_fraction
from synthesis.monotone_mixture import MixtureConfig, generate_monotone_mixture
from synthesis.survival_generator import SurvivalConfig, generate_survival
from cli.run_report import RunReport

logger = get_logger(__name__)

app = typer.Typer(add_completion=False, help='Contrastive trend estimation on sequences and survival records.')

EXIT_CODES = ((ConfigError, 1), (DataError, 2), (NumericError, 3))

@app.callback()
def main(verbose: bool = typer.Option(False, '--verbose', '-v', help='Log at DEBUG level.')) -> None:
    configure_logging(logging.DEBUG if verbose else logging.INFO)

def _integers(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in text.replace(',', ' ').split())
    except ValueError:
        raise ConfigError(f'{name} must be a comma separated list of integers, got {text!r}') from None

def _grid(text: str) -> tuple[tuple[float, int], ...]:
    cells = []
    for cell in text.replace(' ', '').split(','):
        try:
            eta, width = cell.split(':')
            cells.append((float(eta), int(width)))
        except ValueError:
            raise ConfigError(f'grid cells look like eta:M, got {cell!r}') from None
    return tuple(cells)

def _data_kind(path: str) -> TrainMode:
    """
    Tells sequence from survival CSV files by their header.
    """

    header, rows = CsvTableReader().read_table(path)
    rows.close()
    return TrainMode.SEQUENCE if header[0] == 'seq_id' else TrainMode.SURVIVAL

def _load_survival(path: str) -> SurvivalDataset:
    """
    Reads a survival CSV and, when '<name>.meta.csv' exists next to it, its true risks.
    """

    dataset = read_survival_dataset(path)
    sidecar = metadata_path(path)
    if not sidecar.exists():
        return dataset
    metadata = read_metadata(str(sidecar))
    risk = {record_id: values['true_risk'] for record_id, values in metadata.items() if 'true_risk' in values}
    return SurvivalDataset(dataset.records, dataset.feature_dim, risk or None)

def _load(path: str) -> object:
    return read_sequence_dataset(path) if _data_kind(path) is TrainMode.SEQUENCE else _load_survival(path)

def _train_config(config_path: Optional[str], **overrides: object) -> TrainConfig:
    config = read_train_config(config_path) if config_path else TrainConfig()
    hidden = overrides.pop('hidden_dims', None)
    if hidden is not None:
        overrides['hidden_dims'] = _integers(hidden, '--hidden')
    return config.with_overrides(**overrides)

@app.command('gen-springs')
def gen_springs(
    out: str = typer.Option(..., '--out', help='Destination sequence CSV.'),
    sequences: int = typer.Option(300, '--sequences'),
    samples: int = typer.Option(50, '--samples'),
    balls: int = typer.Option(10, '--balls'),
    steps: int = typer.Option(50, '--steps'),
    dt: float = typer.Option(0.03, '--dt'),
    connection_prob: float = typer.Option(0.5, '--connection-prob'),
    alpha_min: float = typer.Option(0.9, '--alpha-min'),
    alpha_max: float = typer.Option(1.0, '--alpha-max'),
    seed: int = typer.Option(0, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Simulates ball-springs degradation sequences; alphas go to the '.meta.csv' sidecar.
    """

    start = time.perf_counter()
    config = SpringsConfig(n_balls=balls, sim_steps=steps, dt=dt, connection_prob=connection_prob,
                           alpha_range=(alpha_min, alpha_max), samples_per_sequence=samples, n_sequences=sequences,
                           seed=seed)
    run = BallSpringsSimulator(config).run()
    write_sequence_dataset(run.dataset, out)
    sidecar = str(metadata_path(out))
    write_metadata(sidecar, 'seq_id', run.metadata())
    RunReport('gen-springs', asdict(config), seed,
              {'n_sequences': len(run.dataset), 'n_samples': run.dataset.n_samples,
               'feature_dim': run.dataset.feature_dim},
              {'data': out, 'metadata': sidecar}, time.perf_counter() - start).write(report)

@app.command('gen-mixture')
def gen_mixture(
    out: str = typer.Option(..., '--out', help='Destination sequence CSV.'),
    sequences: int = typer.Option(200, '--sequences'),
    samples: int = typer.Option(50, '--samples'),
    nuisance: int = typer.Option(3, '--nuisance'),
    transform: str = typer.Option('identity', '--transform', help='identity, cube or exp.'),
    mixing: str = typer.Option('random', '--mixing', help='random or identity.'),
    noise: float = typer.Option(0.05, '--noise'),
    season_period: int = typer.Option(7, '--season-period'),
    seed: int = typer.Option(0, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Generates monotone-mixture sequences with their trend.
    """

    start = time.perf_counter()
    config = MixtureConfig(n_sequences=sequences, samples_per_sequence=samples, nuisance_dim=nuisance,
                           trend_transform=transform, mixing=mixing, noise_std=noise, season_period=season_period,
                           seed=seed)
    dataset = generate_monotone_mixture(config)
    write_sequence_dataset(dataset, out)
    echo = {**asdict(config), 'trend_transform': config.trend_transform.value, 'mixing': config.mixing.value}
    RunReport('gen-mixture', echo, seed, {'n_sequences': len(dataset), 'n_samples': dataset.n_samples,
                                          'feature_dim': dataset.feature_dim},
              {'data': out}, time.perf_counter() - start).write(report)

@app.command('gen-survival')
def gen_survival(
    out: str = typer.Option(..., '--out', help='Destination survival CSV.'),
    n: int = typer.Option(2000, '--n'),
    features: int = typer.Option(10, '--features'),
    censor_rate: float = typer.Option(0.3, '--censor-rate'),
    risk_scale: float = typer.Option(2.0, '--risk-scale'),
    seed: int = typer.Option(0, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Generates censored survival records; true risks go to the '.meta.csv' sidecar.
    """

    start = time.perf_counter()
    config = SurvivalConfig(n=n, feature_dim=features, censor_rate=censor_rate, risk_scale=risk_scale, seed=seed)
    dataset = generate_survival(config)
    write_survival_dataset(dataset, out)
    sidecar = str(metadata_path(out))
    write_metadata(sidecar, 'id', {record_id: {'true_risk': risk} for record_id, risk in dataset.true_risk.items()})
    oracle = concordance_index(dataset.risk_vector(), dataset.times(), dataset.events())
    RunReport('gen-survival', asdict(config), seed, {'n': len(dataset), 'censoring_rate': dataset.censoring_rate,
                                                      'oracle_ci': oracle},
              {'data': out, 'metadata': sidecar}, time.perf_counter() - start).write(report)

@app.command('contaminate')
def contaminate_command(
    data: str = typer.Option(..., '--data', help='Source sequence CSV.'),
    out: str = typer.Option(..., '--out', help='Destination sequence CSV.'),
    eta: float = typer.Option(..., '--eta', help='Prevalence in [0, 1].'),
    dispersion: int = typer.Option(..., '--dispersion', '-M', help='Window width M.'),
    seed: int = typer.Option(0, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Shuffles samples inside random windows so that some time-order labels flip.
    """

    start = time.perf_counter()
    params = ContaminationParams(eta, dispersion, seed)
    noisy = contaminate(read_sequence_dataset(data), params)
    write_sequence_dataset(noisy, out)
    RunReport('contaminate', {'data': data, **asdict(params)}, seed, {'flip_fraction': label_flip_fraction(noisy)},
              {'data': out}, time.perf_counter() - start).write(report)

@app.command('window')
def window_command(
    data: str = typer.Option(..., '--data', help='Source sequence CSV.'),
    out: str = typer.Option(..., '--out', help='Destination sequence CSV.'),
    length: int = typer.Option(25, '--length'),
    stride: int = typer.Option(5, '--stride'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Cuts every sequence into rolling sub-trajectories.
    """

    start = time.perf_counter()
    windows = extract_subtrajectories(read_sequence_dataset(data), length, stride)
    write_sequence_dataset(windows, out)
    RunReport('window', {'data': data, 'length': length, 'stride': stride}, None,
              {'n_sequences': len(windows), 'n_samples': windows.n_samples},
              {'data': out}, time.perf_counter() - start).write(report)

@app.command('train')
def train_command(
    data: str = typer.Option(..., '--data', help='Sequence or survival CSV.'),
    model: str = typer.Option(..., '--model', help='Destination model file.'),
    config: Optional[str] = typer.Option(None, '--config', help="'key = value' training config."),
    mode: Optional[str] = typer.Option(None, '--mode', help='sequence or survival; defaults to the data kind.'),
    loss: Optional[str] = typer.Option(None, '--loss', help='bce or l1.'),
    epochs: Optional[int] = typer.Option(None, '--epochs'),
    hidden: Optional[str] = typer.Option(None, '--hidden', help='Hidden widths, e.g. 64,32.'),
    embedding_dim: Optional[int] = typer.Option(None, '--embedding-dim'),
    learning_rate: Optional[float] = typer.Option(None, '--lr'),
    batch_size: Optional[int] = typer.Option(None, '--batch-size'),
    pairs: Optional[int] = typer.Option(None, '--pairs', help='Pairs per sequence (or record) and epoch.'),
    validation_fraction: Optional[float] = typer.Option(None, '--validation-fraction'),
    patience: Optional[int] = typer.Option(None, '--patience'),
    seed: Optional[int] = typer.Option(None, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Trains an embedding model on time-order pairs or comparable survival pairs.
    """

    start = time.perf_counter()
    dataset = _load(data)
    resolved = _train_config(config, mode=mode or _data_kind(data), loss=loss, epochs=epochs, hidden_dims=hidden,
                             embedding_dim=embedding_dim, learning_rate=learning_rate, batch_size=batch_size,
                             pairs_per_sequence=pairs, validation_fraction=validation_fraction,
                             early_stop_patience=patience, seed=seed)
    trained, history = train(dataset, resolved)
    serialize_model(trained, model)
    metrics = {
        'best_validation_accuracy': history.validation_accuracy[history.best_epoch],
        'final_train_loss': history.train_loss[-1],
        'history': history.to_mapping(),
    }
    RunReport('train', {'data': data, **resolved.to_mapping()}, resolved.seed, metrics, {'model': model},
              time.perf_counter() - start).write(report)

@app.command('score')
def score_command(
    data: str = typer.Option(..., '--data', help='Sequence or survival CSV.'),
    model: str = typer.Option(..., '--model', help='Trained model file.'),
    out: str = typer.Option(..., '--out', help='Destination scores CSV.'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Writes the trend score of every sample: seq_id,t,score or id,score,risk.
    """

    start = time.perf_counter()
    extractor = deserialize_model(model)
    dataset = _load(data)
    if isinstance(dataset, SurvivalDataset):
        scores = extractor.score(dataset.feature_matrix())
        lines = ['id,score,risk'] + [f'{record_id},{format_real(value)},{format_real(risk)}' for record_id, value, risk
                                     in zip(dataset.ids, scores, survival_risk(scores))]
    else:
        lines = ['seq_id,t,score']
        for seq_id, values in sequence_scores(extractor, dataset).items():
            lines += [f'{seq_id},{t},{format_real(value)}' for t, value in zip(dataset.time_indices(seq_id), values)]
    write_lines(out, lines)
    RunReport('score', {'data': data, 'model': model}, None, {'n_scored': len(lines) - 1}, {'scores': out},
              time.perf_counter() - start).write(report)

@app.command('eval-trend')
def eval_trend(
    data: str = typer.Option(..., '--data', help='Sequence CSV with a tau column.'),
    model: str = typer.Option(..., '--model', help='Trained model file.'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Correlation, Mann-Kendall and pair accuracy of the scores against the true trend.
    """

    start = time.perf_counter()
    result = evaluate_trend(deserialize_model(model), read_sequence_dataset(data))
    RunReport('eval-trend', {'data': data, 'model': model}, None, result.to_metrics(), {},
              time.perf_counter() - start).write(report)

@app.command('eval-survival')
def eval_survival(
    data: str = typer.Option(..., '--data', help='Survival CSV.'),
    model: str = typer.Option(..., '--model', help='Trained model file.'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Concordance index of risk = -score, plus the oracle concordance when true risks are known.
    """

    start = time.perf_counter()
    result = evaluate_survival(deserialize_model(model), _load_survival(data))
    RunReport('eval-survival', {'data': data, 'model': model}, None, result.to_metrics(), {},
              time.perf_counter() - start).write(report)

@app.command('cv-survival')
def cv_survival(
    data: str = typer.Option(..., '--data', help='Survival CSV.'),
    config: Optional[str] = typer.Option(None, '--config', help="'key = value' training config."),
    folds: int = typer.Option(10, '--folds'),
    repeats: int = typer.Option(1, '--repeats'),
    epochs: Optional[int] = typer.Option(None, '--epochs'),
    seed: Optional[int] = typer.Option(None, '--seed'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    k-fold cross-validated concordance of contrastive training.
    """

    start = time.perf_counter()
    resolved = _train_config(config, mode=TrainMode.SURVIVAL, epochs=epochs, seed=seed)
    result = cross_validate_survival(_load_survival(data), resolved, folds, repeats)
    RunReport('cv-survival', {'data': data, 'folds': folds, 'repeats': repeats, **resolved.to_mapping()},
              resolved.seed, result.to_metrics(), {}, time.perf_counter() - start).write(report)

@app.command('mk-test')
def mk_test(
    data: str = typer.Option(..., '--data', help='CSV file with a header.'),
    column: str = typer.Option(..., '--column', help='Column holding the series, in row order.'),
    alpha: float = typer.Option(0.05, '--alpha'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Mann-Kendall trend test of one CSV column.
    """

    start = time.perf_counter()
    reader = CsvTableReader()
    header, rows = reader.read_table(data)
    if column not in header:
        rows.close()
        raise ConfigError(f'{data} has no column {column!r}; columns are {header}')
    position = header.index(column)
    series = [reader.parse_real(data, line_number, column, fields[position]) for line_number, fields in rows]
    result = mann_kendall(series, alpha)
    RunReport('mk-test', {'data': data, 'column': column, 'alpha': alpha}, None, asdict(result), {},
              time.perf_counter() - start).write(report)

@app.command('noise-bench')
def noise_bench(
    out: str = typer.Option(..., '--out', help='Destination results CSV.'),
    config: Optional[str] = typer.Option(None, '--config', help="'key = value' training config."),
    grid: str = typer.Option(','.join(f'{eta}:{width}' for eta, width in DEFAULT_GRID), '--grid',
                             help='eta:M cells, comma separated.'),
    seeds: str = typer.Option('0,1,2,3,4', '--seeds'),
    sequences: int = typer.Option(200, '--sequences'),
    samples: int = typer.Option(30, '--samples'),
    nuisance: int = typer.Option(3, '--nuisance'),
    epochs: Optional[int] = typer.Option(None, '--epochs'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Clean-pair accuracy of bce and l1 training under window-shuffle label noise.
    """

    start = time.perf_counter()
    resolved = _train_config(config, epochs=epochs)
    mixture = MixtureConfig(n_sequences=sequences, samples_per_sequence=samples, nuisance_dim=nuisance)
    benchmark = NoiseBenchmark(mixture, resolved, _grid(grid), seeds=_integers(seeds, '--seeds'))
    rows = benchmark.run()
    NoiseBenchmark.write_csv(out, rows)
    RunReport('noise-bench', {'grid': grid, 'seeds': seeds, 'sequences': sequences, 'samples': samples,
                              'nuisance': nuisance, **resolved.to_mapping()}, None,
              NoiseBenchmark.summarize(rows), {'results': out}, time.perf_counter() - start).write(report)

@app.command('bench-identifiability')
def bench_identifiability(
    config: Optional[str] = typer.Option(None, '--config', help="'key = value' training config."),
    n_train: int = typer.Option(300, '--train'),
    n_test: int = typer.Option(100, '--test'),
    samples: int = typer.Option(30, '--samples'),
    nuisance: int = typer.Option(6, '--nuisance'),
    noise: float = typer.Option(0.05, '--noise'),
    seeds: str = typer.Option('0,1,2,3,4', '--seeds'),
    epochs: Optional[int] = typer.Option(None, '--epochs'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Held-out Spearman correlation for identity, cube and exp trend transforms.
    """

    start = time.perf_counter()
    resolved = _train_config(config, epochs=epochs)
    mixture = MixtureConfig(samples_per_sequence=samples, nuisance_dim=nuisance, noise_std=noise)
    result = identifiability_benchmark(mixture, resolved, n_train, n_test, seeds=_integers(seeds, '--seeds'))
    RunReport('bench-identifiability', {'train': n_train, 'test': n_test, 'samples': samples, 'nuisance': nuisance,
                                        'noise': noise, 'seeds': seeds, **resolved.to_mapping()}, None, result, {},
              time.perf_counter() - start).write(report)

@app.command('bench-springs')
def bench_springs(
    config: Optional[str] = typer.Option(None, '--config', help="'key = value' training config."),
    n_train: int = typer.Option(300, '--train'),
    n_test: int = typer.Option(100, '--test'),
    balls: int = typer.Option(5, '--balls'),
    steps: int = typer.Option(30, '--steps'),
    samples: int = typer.Option(30, '--samples'),
    seeds: str = typer.Option('0,1,2,3,4', '--seeds'),
    epochs: Optional[int] = typer.Option(None, '--epochs'),
    report: Optional[str] = typer.Option(None, '--report'),
) -> None:
    """
    Held-out correlation between scores and applied degradation on ball-springs data.
    """

    start = time.perf_counter()
    resolved = _train_config(config, epochs=epochs)
    springs = SpringsConfig(n_balls=balls, sim_steps=steps, samples_per_sequence=samples)
    result = springs_benchmark(springs, resolved, n_train, n_test, seeds=_integers(seeds, '--seeds'))
    RunReport('bench-springs', {'train': n_train, 'test': n_test, 'balls': balls, 'steps': steps, 'samples': samples,
                                'seeds': seeds, **resolved.to_mapping()}, None, result, {},
              time.perf_counter() - start).write(report)

def dispatch(argv: list[str]) -> int:
    """
    Runs one trendlab command and maps its outcome to an exit code.

    Args:
        argv (list[str]): Arguments after the program name.

    Returns:
        int: 0 on success, 1 for usage or configuration errors, 2 for data errors, 3 for numeric failures.
    """

    command = typer.main.get_command(app)
    try:
        result = command.main(args=list(argv), prog_name='trendlab', standalone_mode=False)
    except click.exceptions.Exit as exit_:
        return exit_.exit_code
    except click.Abort:
        typer.echo('Aborted.', err=True)
        return 1
    except click.ClickException as error:
        error.show()
        return 1
    except (ConfigError, DataError, NumericError) as error:
        typer.echo(f'trendlab: {error}', err=True)
        return next(code for kind, code in EXIT_CODES if isinstance(error, kind))
    return result if isinstance(result, int) else 0

def run() -> None:
    sys.exit(dispatch(sys.argv[1:]))

if __name__ == '__main__':
    run()
