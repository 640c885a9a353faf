// CLI entry point; subcommands are wired up in cli.cpp once the modules land.
int main() { return 0; }
