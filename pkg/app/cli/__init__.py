"""Command-line surface and reproduction suite"""