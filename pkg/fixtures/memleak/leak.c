void run(void)
{
	char *buf;
#ifdef CONFIG_A
	buf = make_buffer();
#endif
#ifdef CONFIG_B
	free(buf);
#endif
}
