static void process_dev(char *devname, int c, char *p)
{
#ifdef CONFIG_FEATURE_HDPARM_HDIO_UNREGISTER_HWIF
	if (c == 'U') {
		if (!p)
			goto expected_hwif_error;
		unregister_hwif(p);
	}
#endif
#ifdef CONFIG_FEATURE_HDPARM_HDIO_SCAN_HWIF
	if (c == 'R') {
		if (!p) {
 expected_hwif_error:
			bb_error_msg_and_die("expected hwif value");
		}
		scan_hwif(p);
	}
#endif
}
