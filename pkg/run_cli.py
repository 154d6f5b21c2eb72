#!/usr/bin/env python3
"""
HOI 시뮬레이션 CLI 실행 스크립트
환경 확인 후 backend/app/main.py 의 typer 앱을 실행합니다.

예) python run_cli.py simulate --topology intransitive --hoi sym --alpha 2 --beta -3 --omega 1
"""

import os
import sys
from pathlib import Path


def setup_environment():
    """환경 설정"""
    project_root = Path(__file__).parent
    backend_path = project_root / "backend"

    # sys.path 설정 (중복 방지)
    for path in (str(project_root), str(backend_path)):
        if path not in sys.path:
            sys.path.insert(0, path)

    os.environ.setdefault('PYTHONPATH', str(backend_path))
    return project_root, backend_path


def check_requirements():
    """필요한 의존성 확인"""
    required_packages = [
        ('numpy', 'numpy'),
        ('scipy', 'scipy'),
        ('pandas', 'pandas'),
        ('pydantic', 'pydantic'),
        ('pydantic-settings', 'pydantic_settings'),
        ('joblib', 'joblib'),
        ('typer', 'typer'),
        ('rich', 'rich'),
        ('tqdm', 'tqdm'),
    ]

    missing_packages = []
    for pip_name, import_name in required_packages:
        try:
            __import__(import_name)
        except ImportError:
            missing_packages.append(pip_name)

    if missing_packages:
        print(f"❌ 누락된 패키지: {', '.join(missing_packages)}", file=sys.stderr)
        print("설치 명령어: pip install -r requirements.txt", file=sys.stderr)
        return False

    try:
        __import__('numba')
    except ImportError:
        print("⚠️ numba 가 없어 순수 파이썬 적분 커널을 사용합니다 (느림).", file=sys.stderr)
    return True


def main():
    setup_environment()
    if not check_requirements():
        sys.exit(1)

    from app.main import app
    app()


if __name__ == "__main__":
    main()
