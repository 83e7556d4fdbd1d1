"""Management command que roda um experimento e grava seus artefatos.

Uso:
    python manage.py qel maxcut --trials 5 --out out/
    qel fit --config fit.json
"""

import json
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.experiments.config import load_config
from apps.experiments.constants import ExperimentKind
from apps.experiments.emission import dumps, emit
from apps.experiments.runner import run_experiment
from tools.exceptions import ConfigError, QELError


def read_config_file(path: str) -> dict:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(
            f"Não foi possível ler {path}: {exc}", path=path
        ) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"JSON inválido em {path}: {exc.msg}", path=path, line=exc.lineno
        ) from exc
    if not isinstance(payload, dict):
        raise ConfigError(
            "A configuração deve ser um objeto JSON.", path=path
        )
    return payload


class Command(BaseCommand):
    help = "Roda um experimento de extremal learning e grava os resultados"

    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument(
            "experiment",
            choices=[kind.value for kind in ExperimentKind],
            help="Experimento a executar",
        )
        parser.add_argument(
            "--config", help="Arquivo JSON mesclado sobre os padrões"
        )
        parser.add_argument("--trials", type=int, help="Número de seeds")
        parser.add_argument("--seed", type=int, help="Seed base")
        parser.add_argument(
            "--out",
            help="Diretório de saída (padrão: QEL_OUTPUT_DIR)",
        )
        parser.add_argument(
            "--workers",
            type=int,
            help="Processos paralelos (padrão: QEL_WORKERS)",
        )

    def handle(self, *args, **options):
        try:
            paths = self.run_from_options(options)
        except QELError as exc:
            self.stderr.write(
                dumps(exc.as_record()), style_func=str, ending=""
            )
            raise CommandError(exc.message, returncode=2) from exc
        self.stdout.write(
            self.style.SUCCESS(f"{len(paths)} arquivos gravados.")
        )

    def run_from_options(self, options):
        data = {}
        if options.get("config"):
            data = read_config_file(options["config"])
        overrides = {
            key: options[key]
            for key in ("trials", "seed", "out")
            if options.get(key) is not None
        }
        config = load_config(data, options["experiment"], **overrides)
        workers = options.get("workers") or settings.QEL_WORKERS
        run = run_experiment(config, workers=workers)
        if run.failed:
            self.stdout.write(
                self.style.WARNING(
                    f"{run.failed} de {len(run.reports)} trials falharam."
                )
            )
        return emit(run, config.out or settings.QEL_OUTPUT_DIR)
