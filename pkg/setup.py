"""
Setup and Installation Script
"""
import os
import subprocess
import sys


def print_header(text):
    """Print formatted header."""
    print("\n" + "=" * 80)
    print(f"  {text}")
    print("=" * 80 + "\n")


def run_command(command, description):
    """Run a command and handle errors."""
    print(f"[..] {description}...")
    try:
        subprocess.run(command, shell=True, check=True, capture_output=True, text=True)
        print(f"[OK] {description} completed successfully")
        return True
    except subprocess.CalledProcessError as e:
        print(f"[FAIL] {description} failed")
        print(f"Error: {e.stderr}")
        return False


def main():
    """Create the virtual environment, install requirements and seed .env."""
    print_header("Checking Python Version")
    python_version = sys.version_info
    print(f"Python version: {python_version.major}.{python_version.minor}.{python_version.micro}")
    if python_version < (3, 10):
        print("[FAIL] Python 3.10 or higher is required")
        return False

    print_header("Virtual Environment")
    if not os.path.exists("venv"):
        if not run_command(f"{sys.executable} -m venv venv", "Virtual environment creation"):
            return False
    else:
        print("[OK] Virtual environment already exists")

    if os.name == "nt":
        pip_cmd = "venv\\Scripts\\pip"
        python_cmd = "venv\\Scripts\\python"
    else:
        pip_cmd = "venv/bin/pip"
        python_cmd = "venv/bin/python"

    print_header("Installing Dependencies")
    if not run_command(f"{pip_cmd} install --upgrade pip", "Upgrading pip"):
        return False
    if not run_command(f"{pip_cmd} install -r requirements.txt", "Installing dependencies"):
        return False

    print_header("Environment Configuration")
    if not os.path.exists(".env") and os.path.exists(".env.example"):
        with open(".env.example", "r") as src, open(".env", "w") as dst:
            dst.write(src.read())
        print("[OK] Created .env file")
    else:
        print("[OK] .env file already exists")

    print_header("Setup Complete")
    print(f"""
NEXT STEPS:

1. Reproduce the worked example:
   {python_cmd} run.py repro-example

2. Run the test suite:
   {python_cmd} -m pytest tests
""")
    return True


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
