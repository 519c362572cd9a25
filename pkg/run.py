#!/usr/bin/env python3
"""
Main Entry Point for the Walk Proximity Toolkit

    python run.py repro-example
    python run.py walk-dist w1 w2 --graph data/example_graph.txt --walks data/example_walks.txt
"""
import os
import sys

from dotenv import load_dotenv

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from src.ui.cli_app import main


if __name__ == "__main__":
    load_dotenv()
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.exit(130)
