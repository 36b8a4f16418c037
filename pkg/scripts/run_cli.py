#!/usr/bin/env python3
"""
spamlab runner
Checks dependencies, puts the project root on sys.path and hands over to the CLI
"""

import sys
from pathlib import Path

# Add project directory to Python path
project_dir = Path(__file__).parent.parent
sys.path.insert(0, str(project_dir))


def check_requirements():
    """Check if required packages are installed"""
    try:
        import numpy
        import scipy
        import pydantic
        import psutil
        return True
    except ImportError as e:
        print(f"❌ Missing required package: {e}", file=sys.stderr)
        print("Run: pip install -r requirements.txt", file=sys.stderr)
        return False


def main():
    """Main entry point"""
    if not check_requirements():
        sys.exit(1)

    from spamlab.main import main as cli_main

    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
