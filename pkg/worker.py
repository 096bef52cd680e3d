import os

from dotenv import load_dotenv

from celery import Celery
from celery.signals import worker_process_init

from utils import configure_file_logging, logger


load_dotenv()


BROKER_URL = os.getenv("CELERY_BROKER_URL")
RESULT_BACKEND = os.getenv("CELERY_RESULT_BACKEND", BROKER_URL)

# Single Celery instance; all tasks live in tasks.py.
celery_app = Celery("snweb", broker=BROKER_URL, backend=RESULT_BACKEND)
celery_app.conf.imports = ("tasks",)
celery_app.conf.task_serializer = "json"
celery_app.conf.result_serializer = "json"
celery_app.conf.accept_content = ["json"]

if not BROKER_URL:
    # Without a broker every dispatched case runs in the calling process.
    celery_app.conf.task_always_eager = True
    celery_app.conf.task_eager_propagates = True


@worker_process_init.connect
def _configure_worker_logging(**_: object) -> None:
    log_path = configure_file_logging("log_worker.log")
    logger.info("Worker logging configured", log_path=str(log_path), broker=bool(BROKER_URL))
