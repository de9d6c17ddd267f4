import src.cli

if __name__ == "__main__":
    src.cli.main()
