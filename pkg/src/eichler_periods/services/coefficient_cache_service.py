"""
Cache for extracted Poincare coefficients, in Redis or a local JSON file
"""

import json
import os
import sys
from typing import Any, Dict, List, Optional

import redis

from ..config import settings


class CoefficientCacheService:
    """Service storing coefficient lists keyed by (kind, k, m, c_max)"""

    def __init__(self, use_redis: Optional[bool] = None, path: Optional[str] = None):
        self.use_redis = settings.use_redis if use_redis is None else use_redis
        self.path = path or settings.cache_path
        self._client: Optional[redis.Redis] = None
        self._redis_failed = False
        self._memory: Dict[str, List[List[float]]] = {}
        self._loaded = False

    @staticmethod
    def make_key(kind: str, k: int, m: int, c_max: int) -> str:
        return f"poincare:{kind}:{k}:{m}:{c_max}"

    def get_client(self) -> Optional[redis.Redis]:
        """Get or create Redis connection"""
        if not self.use_redis or self._redis_failed:
            return None
        if self._client is None:
            try:
                self._client = redis.Redis(
                    host=settings.redis_host,
                    port=settings.redis_port,
                    db=settings.redis_db,
                    decode_responses=True,
                )
                self._client.ping()
                print(f"✅ Connected to Redis at {settings.redis_host}:{settings.redis_port}", file=sys.stderr)
            except Exception as e:
                print(f"❌ Redis connection failed: {e}", file=sys.stderr)
                print("⚠️ Falling back to the JSON coefficient cache", file=sys.stderr)
                self._client = None
                self._redis_failed = True
        return self._client

    def _load_file(self):
        if self._loaded:
            return
        self._loaded = True
        if not os.path.exists(self.path):
            return
        try:
            with open(self.path) as handle:
                self._memory = json.load(handle)
        except (OSError, ValueError) as e:
            print(f"⚠️ Ignoring unreadable cache file {self.path}: {e}", file=sys.stderr)
            self._memory = {}

    def _save_file(self):
        try:
            with open(self.path, "w") as handle:
                json.dump(self._memory, handle, sort_keys=True)
        except OSError as e:
            print(f"❌ Could not write cache file {self.path}: {e}", file=sys.stderr)

    def get(self, key: str) -> Optional[List[List[float]]]:
        """Stored [re, im] pairs or None"""
        client = self.get_client()
        if client is not None:
            try:
                raw = client.get(key)
                return json.loads(raw) if raw else None
            except Exception as e:
                print(f"Error reading {key} from Redis: {e}", file=sys.stderr)
                return None
        self._load_file()
        return self._memory.get(key)

    def put(self, key: str, coeffs: List[List[float]]) -> bool:
        client = self.get_client()
        if client is not None:
            try:
                client.set(key, json.dumps(coeffs))
                return True
            except Exception as e:
                print(f"Error writing {key} to Redis: {e}", file=sys.stderr)
                return False
        self._load_file()
        self._memory[key] = [[float(re), float(im)] for re, im in coeffs]
        self._save_file()
        return True

    def clear(self) -> Dict[str, Any]:
        """Remove every cached coefficient list"""
        try:
            client = self.get_client()
            if client is not None:
                keys = list(client.scan_iter("poincare:*"))
                for key in keys:
                    client.delete(key)
                return {"success": True, "message": f"Cleared {len(keys)} Redis keys", "deleted": len(keys)}
            self._load_file()
            count = len(self._memory)
            self._memory = {}
            if os.path.exists(self.path):
                os.remove(self.path)
            return {"success": True, "message": f"Cleared {count} cached entries", "deleted": count}
        except Exception as e:
            return {"success": False, "error": str(e)}

    def get_status(self) -> Dict[str, Any]:
        """Backend in use and number of cached entries"""
        try:
            client = self.get_client()
            if client is not None:
                keys = list(client.scan_iter("poincare:*"))
                return {"backend": "redis", "connected": True, "entries": len(keys), "url": settings.redis_url}
            self._load_file()
            return {
                "backend": "json",
                "connected": False,
                "entries": len(self._memory),
                "path": self.path,
            }
        except Exception as e:
            return {"backend": "unknown", "connected": False, "entries": 0, "error": str(e)}
