from pathlib import Path
import pickle  # nosec B403 - Used for caching locally built trees and reports
import logging

logger = logging.getLogger(__name__)


def read_stub(read_from_stub: bool, stub_path, fingerprint=None):
    """
    Load a cached result if caching is enabled and the cache matches.

    Args:
        read_from_stub (bool): Whether to attempt reading the cache at all.
        stub_path (str | Path | None): Path to the cache file.
        fingerprint (object, optional): Value describing the inputs that produced
            the cached result. A cache written with another fingerprint is ignored.

    Returns:
        object | None: The cached payload, or None on a miss.
    """
    if not read_from_stub or stub_path is None:
        return None
    stub_path = Path(stub_path)
    if not stub_path.exists():
        return None
    with stub_path.open("rb") as f:
        cached = pickle.load(f)  # nosec B301 - Loading cache written by save_stub
    if cached.get("fingerprint") != fingerprint:
        logger.info("Ignoring stale stub %s", stub_path)
        return None
    logger.debug("Read stub %s", stub_path)
    return cached["payload"]


def save_stub(stub_path, data, fingerprint=None):
    if stub_path is None:
        return
    stub_path = Path(stub_path)
    stub_path.parent.mkdir(parents=True, exist_ok=True)
    with stub_path.open("wb") as f:
        pickle.dump({"fingerprint": fingerprint, "payload": data}, f)
