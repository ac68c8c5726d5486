"""Real-time multi-agent pathfinding toolkit package."""
