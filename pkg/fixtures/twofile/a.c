#ifdef CONFIG_A
int shared;
#endif
